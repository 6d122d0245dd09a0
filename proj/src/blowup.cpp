#include "wulff/blowup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "wulff/quadrature.hpp"

namespace wulff {

double BubbleSumField::density(const Eigen::Ref<const Vector>& x) const {
  double sum = 0.0;
  for (const auto& c : components)
    sum += c.V0 * std::exp(bubble_eval(c, x));
  return sum;
}

double BubbleSumField::field(const Eigen::Ref<const Vector>& x) const {
  // log-sum-exp of the component fields, anchored at the largest.
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> vals(components.size());
  for (size_t i = 0; i < components.size(); ++i) {
    vals[i] = bubble_eval(components[i], x) +
              std::log(components[i].V0 / components.front().V0);
    best = std::max(best, vals[i]);
  }
  double acc = 0.0;
  for (double v : vals) acc += std::exp(v - best);
  return best + std::log(acc);
}

void FamilyConfig::validate() const {
  norm.validate();
  if (N != norm.dim) throw std::invalid_argument("FamilyConfig: N != norm.dim");
  if (!(V0 > 0.0)) throw std::invalid_argument("FamilyConfig: V0 <= 0");
  if (centers.empty())
    throw std::invalid_argument("FamilyConfig: no centers");
  if (lambda_schedule.empty())
    throw std::invalid_argument("FamilyConfig: empty lambda schedule");
  if (lambda_schedule.front() < 1.0)
    throw std::invalid_argument("FamilyConfig: lambda must be >= 1");
  for (size_t i = 1; i < lambda_schedule.size(); ++i)
    if (!(lambda_schedule[i] > lambda_schedule[i - 1]))
      throw std::invalid_argument("FamilyConfig: lambda must increase strictly");
  if (box_lo.size() != N || box_hi.size() != N ||
      !((box_hi - box_lo).minCoeff() > 0.0))
    throw std::invalid_argument("FamilyConfig: bad box");
  for (const auto& c : centers) {
    if (c.size() != N) throw std::invalid_argument("FamilyConfig: center dim");
    if (((c - box_lo).minCoeff() < 0.0) || ((box_hi - c).minCoeff() < 0.0))
      throw std::invalid_argument("FamilyConfig: center outside box");
  }
  // Disjointness of B_{2k delta}(p_i): separation must beat 4 k delta at
  // the loosest (first) family member.
  const double d0 = delta(0);
  for (size_t i = 0; i < centers.size(); ++i)
    for (size_t j = i + 1; j < centers.size(); ++j) {
      const double sep = dual_norm(norm, centers[i] - centers[j]);
      if (!(sep > 0.0))
        throw std::invalid_argument("FamilyConfig: duplicate centers");
      if (sep < 4.0 * k_cluster * d0)
        throw std::invalid_argument(
            "FamilyConfig: centers violate cluster disjointness");
    }
  if (grid_nodes != 0 && grid_nodes < 9)
    throw std::invalid_argument("FamilyConfig: grid_nodes must be 0 or >= 9");
}

double FamilyConfig::delta(int n) const {
  return std::pow(V0 / liouville_constant(N), 1.0 / N) / lambda_schedule[n];
}

BubbleSumField FamilyConfig::member(int n) const {
  BubbleSumField f;
  for (const auto& c : centers)
    f.components.push_back(
        BubbleParams::make(norm, lambda_schedule[n], c, V0));
  return f;
}

int worker_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("WULFF_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

namespace {

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  for (auto& t : pool) t.join();
}

// Positive integrals with relative control: a first pass at a coarse
// absolute tolerance fixes the scale, a second pass refines.
double radial_ball_rel(const std::function<double(double)>& g, int N,
                       double kappa, double radius, double rel_tol,
                       double scale_hint) {
  const double rough =
      radial_ball_integral(g, N, kappa, radius, 1e-6 * scale_hint);
  const double tol = std::max(rel_tol * std::max(rough, 0.0), 1e-300);
  return radial_ball_integral(g, N, kappa, radius, tol);
}

double radial_tail_rel(const std::function<double(double)>& g, int N,
                       double kappa, double lo, double rel_tol,
                       double scale_hint) {
  const double rough =
      radial_tail_integral(g, N, kappa, lo, 1e-6 * scale_hint);
  const double tol = std::max(rel_tol * std::max(rough, 0.0), 1e-300);
  return radial_tail_integral(g, N, kappa, lo, tol);
}

}  // namespace

double measure_mass_polar(const std::function<double(const Vector&)>& density,
                          const NormSpec& spec, const Vector& center,
                          double radius, double quad_tol) {
  if (radius < 0.0) throw std::invalid_argument("measure_mass: radius < 0");
  if (radius == 0.0) return 0.0;
  if (spec.dim != 2)
    throw std::invalid_argument("measure_mass_polar: 2D only");
  auto ray = [&](double theta) {
    Vector w(2);
    w << std::cos(theta), std::sin(theta);
    const double reach = radius / dual_norm(spec, w);
    auto along = [&](double s) { return density(center + s * w) * s; };
    const auto pts = log_panels(reach * 1e-14, reach, 2, true);
    return integrate_panels(along, pts, quad_tol * 1e-3 / (2.0 * M_PI));
  };
  const std::vector<double> sectors = {0.0, 0.5 * M_PI, M_PI, 1.5 * M_PI,
                                       2.0 * M_PI};
  return integrate_panels(ray, sectors, quad_tol);
}

MassEntry measure_mass(const BubbleSumField& field, const Vector& center,
                       double radius, double quad_tol) {
  if (radius < 0.0) throw std::invalid_argument("measure_mass: radius < 0");
  MassEntry entry;
  entry.center = center;
  entry.radius = radius;
  entry.tail = 0.0;
  const NormSpec& spec = field.norm();
  const int N = field.dim();
  const double kappa = wulff_kappa(spec);
  const double scale = liouville_constant(N) * kappa;
  for (const auto& comp : field.components) {
    const double off = dual_norm(spec, comp.p - center);
    auto profile = [&](double r) {
      return comp.V0 * std::exp(bubble_profile(comp, r));
    };
    if (off <= 1e-12 * std::max(1.0, radius)) {
      if (radius > 0.0)
        entry.mass +=
            radial_ball_rel(profile, N, kappa, radius, quad_tol, scale);
      entry.tail +=
          radius > 0.0
              ? radial_tail_rel(profile, N, kappa, radius, quad_tol, scale)
              : scale;
    } else {
      if (radius == 0.0) continue;
      auto dens = [&](const Vector& x) {
        return comp.V0 * std::exp(bubble_eval(comp, x));
      };
      entry.mass +=
          measure_mass_polar(dens, spec, center, radius, quad_tol * scale);
    }
  }
  return entry;
}

double measure_mass(const GridField& u, const GridField& V,
                    const NormSpec& spec, const Vector& center,
                    double radius) {
  if (radius < 0.0) throw std::invalid_argument("measure_mass: radius < 0");
  if (u.shape() != V.shape())
    throw std::invalid_argument("measure_mass: grid shapes differ");
  const int N = u.dim();
  const double h = u.spacing();
  // The ball's extent along axis i is radius * F(e_i); it must stay on
  // the grid.
  for (int i = 0; i < N; ++i) {
    Vector e = Vector::Zero(N);
    e[i] = 1.0;
    const double extent = radius * eval_norm(spec, e);
    const double lo = u.origin()[i], hi = lo + h * (u.shape()[i] - 1);
    if (center[i] - extent < lo - 0.5 * h || center[i] + extent > hi + 0.5 * h)
      throw std::invalid_argument("measure_mass: ball exits the grid");
  }
  const double cell = std::pow(h, N);
  const int sub = 4;
  double total = 0.0;
  std::vector<int> corner(N);
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const Vector x = u.node_position(k);
    // classify by cell corners (the ball is convex)
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (int mask = 0; mask < (1 << N); ++mask) {
      Vector c = x;
      for (int b = 0; b < N; ++b) c[b] += (mask >> b & 1) ? 0.5 * h : -0.5 * h;
      const double d = dual_norm(spec, c - center);
      cmin = std::min(cmin, d);
      cmax = std::max(cmax, d);
    }
    const double dens = V.values()[k] * std::exp(u.values()[k]);
    if (cmax < radius) {
      total += cell * dens;
    } else if (cmin < radius) {
      // straddling cell: subsample the inside fraction
      int inside = 0, points = 1;
      for (int b = 0; b < N; ++b) points *= sub;
      for (int m = 0; m < points; ++m) {
        Vector p = x;
        int mm = m;
        for (int b = 0; b < N; ++b) {
          p[b] += h * ((mm % sub + 0.5) / sub - 0.5);
          mm /= sub;
        }
        if (dual_norm(spec, p - center) < radius) ++inside;
      }
      total += cell * dens * inside / points;
    }
  }
  return total;
}

std::vector<Vector> detect_peaks(const GridField& u, const NormSpec& spec,
                                 double threshold, double min_separation) {
  if (!std::isfinite(threshold))
    throw std::invalid_argument("detect_peaks: threshold must be finite");
  const int N = u.dim();
  std::vector<Vector> centers;
  while (true) {
    double best = -std::numeric_limits<double>::infinity();
    Eigen::Index best_k = -1;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      const Vector x = u.node_position(k);
      double shift = 0.0;
      bool excluded = false;
      if (!centers.empty()) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& p : centers)
          dmin = std::min(dmin, dual_norm(spec, x - p));
        if (dmin < min_separation) excluded = true;
        shift = N * std::log(dmin);
      }
      if (excluded) continue;
      const double val = u.values()[k] + shift;
      if (val > best) {
        best = val;
        best_k = k;
      }
    }
    if (best_k < 0 || best < threshold) break;
    centers.push_back(u.node_position(best_k));
  }
  return centers;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      ss += r * r;
    }
    fit.slope_se = std::sqrt(ss / (n - 2.0) / sxx);
  }
  return fit;
}

namespace {

std::string make_verdict(double estimate, double tol) {
  const double nearest = std::round(estimate);
  if (nearest >= 1.0 && std::abs(estimate - nearest) <= tol) {
    return "quantized(m=" + std::to_string(static_cast<long>(nearest)) + ")";
  }
  return "unresolved";
}

MassReport analytic_report(const FamilyConfig& config, int n, double radius,
                           double quad_tol, double scale) {
  const BubbleSumField field = config.member(n);
  MassReport rep;
  rep.lambda = config.lambda_schedule[n];
  double covered = 0.0;
  for (const auto& c : config.centers) {
    MassEntry e = measure_mass(field, c, radius, quad_tol);
    covered += e.mass;
    rep.entries.push_back(std::move(e));
  }
  rep.total_mass = 0.0;
  for (const auto& comp : field.components)
    rep.total_mass += bubble_mass(comp, quad_tol);
  rep.neck_mass = rep.total_mass - covered;
  rep.quantization_estimate = rep.total_mass / scale;
  rep.verdict = make_verdict(rep.quantization_estimate,
                             std::max(0.01, 10.0 * quad_tol));
  return rep;
}

MassReport grid_report(const FamilyConfig& config, const GridField& u,
                       const GridField& V, int n, double radius,
                       double scale) {
  MassReport rep;
  rep.lambda = config.lambda_schedule[n];
  double covered = 0.0;
  for (const auto& c : config.centers) {
    MassEntry e;
    e.center = c;
    e.radius = radius;
    e.mass = measure_mass(u, V, config.norm, c, radius);
    covered += e.mass;
    rep.entries.push_back(std::move(e));
  }
  rep.total_mass = 0.0;
  const double cell = std::pow(u.spacing(), config.N);
  for (Eigen::Index k = 0; k < u.size(); ++k)
    rep.total_mass += cell * V.values()[k] * std::exp(u.values()[k]);
  rep.neck_mass = rep.total_mass - covered;
  rep.quantization_estimate = rep.total_mass / scale;
  rep.verdict = make_verdict(rep.quantization_estimate, 0.05);
  return rep;
}

}  // namespace

QuantizeSeries quantize_family(const FamilyConfig& config,
                               const std::vector<double>& radii,
                               double quad_tol) {
  config.validate();
  if (radii.empty() ||
      *std::min_element(radii.begin(), radii.end()) <= 0.0)
    throw std::invalid_argument("quantize_family: radii must be positive");
  if (!(quad_tol > 0.0))
    throw std::invalid_argument("quantize_family: quad_tol <= 0");
  const double scale =
      liouville_constant(config.N) * wulff_kappa(config.norm);
  const int members = static_cast<int>(config.lambda_schedule.size());
  QuantizeSeries series;
  series.radii = radii;
  series.reports.resize(members * radii.size());

  if (config.grid_nodes == 0) {
    parallel_for(members, [&](int n) {
      for (size_t ri = 0; ri < radii.size(); ++ri)
        series.reports[n * radii.size() + ri] =
            analytic_report(config, n, radii[ri], quad_tol, scale);
    });
  } else {
    // Grid-backed: the grid must resolve the concentration scale.
    const double extent = (config.box_hi - config.box_lo).maxCoeff();
    const double h = extent / (config.grid_nodes - 1);
    for (int n = 0; n < members; ++n)
      if (h > config.delta(n) / 8.0)
        throw UnresolvedConcentration(
            "quantize_family: grid spacing " + std::to_string(h) +
            " cannot resolve delta = " + std::to_string(config.delta(n)) +
            " at lambda = " + std::to_string(config.lambda_schedule[n]) +
            "; refine the grid or use analytic closures");
    parallel_for(members, [&](int n) {
      const BubbleSumField f = config.member(n);
      GridField u(config.box_lo, h,
                  std::vector<int>(config.N, config.grid_nodes));
      GridField V(config.box_lo, h,
                  std::vector<int>(config.N, config.grid_nodes));
      u.fill([&](const Vector& x) { return f.field(x); });
      V.fill([&](const Vector&) { return config.V0; });
      for (size_t ri = 0; ri < radii.size(); ++ri)
        series.reports[n * radii.size() + ri] =
            grid_report(config, u, V, n, radii[ri], scale);
    });
  }

  // Tail-decay fit per radius over the last (up to) 5 members.
  const int fit_n = std::min(5, members);
  series.fit_members = fit_n;
  for (size_t ri = 0; ri < radii.size(); ++ri) {
    std::vector<double> xs, ys;
    for (int n = members - fit_n; n < members; ++n) {
      const MassReport& rep = series.report(n, static_cast<int>(ri));
      double tail = 0.0;
      bool ok = true;
      for (const auto& e : rep.entries) {
        if (!std::isfinite(e.tail)) ok = false;
        tail += e.tail;
      }
      if (ok && tail > 0.0) {
        xs.push_back(std::log(config.lambda_schedule[n]));
        ys.push_back(std::log(tail));
      }
    }
    if (xs.size() >= 2) {
      const LinearFit fit = fit_line(xs, ys);
      series.tail_slope.push_back(fit.slope);
      series.tail_slope_se.push_back(fit.slope_se);
    } else {
      series.tail_slope.push_back(std::numeric_limits<double>::quiet_NaN());
      series.tail_slope_se.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return series;
}

SupInfResult sup_inf_experiment(const FamilyConfig& config,
                                const Vector& sigma_lo, const Vector& sigma_hi,
                                double C1) {
  config.validate();
  if (!(C1 > 0.0)) throw std::invalid_argument("sup_inf: C1 must be > 0");
  if (sigma_lo.size() != config.N || sigma_hi.size() != config.N ||
      ((sigma_lo - config.box_lo).minCoeff() < 0.0) ||
      ((config.box_hi - sigma_hi).minCoeff() < 0.0))
    throw std::invalid_argument("sup_inf: Sigma must sit inside the box");
  const int members = static_cast<int>(config.lambda_schedule.size());
  if (members < 3)
    throw std::invalid_argument("sup_inf: need >= 3 family members for a fit");

  SupInfResult out;
  out.lambda = config.lambda_schedule;
  out.max_sigma.resize(members);
  out.inf_omega.resize(members);
  out.combination.resize(members);

  const int N = config.N;
  // Candidate maximizers over Sigma: the centers it contains plus a
  // lattice; candidate minimizers over the box: its boundary lattice
  // including the corners (u decreases in F0 away from every center).
  std::vector<Vector> sigma_pts;
  for (const auto& c : config.centers)
    if (((c - sigma_lo).minCoeff() >= 0.0) &&
        ((sigma_hi - c).minCoeff() >= 0.0))
      sigma_pts.push_back(c);
  const int lat = 17;
  std::vector<int> idx(N, 0);
  for (int flat = 0; flat < static_cast<int>(std::pow(lat, N)); ++flat) {
    Vector x(N);
    int m = flat;
    for (int b = 0; b < N; ++b) {
      x[b] = sigma_lo[b] +
             (sigma_hi[b] - sigma_lo[b]) * (m % lat) / (lat - 1);
      m /= lat;
    }
    sigma_pts.push_back(std::move(x));
  }
  std::vector<Vector> boundary_pts;
  const int blat = 65;
  for (int axis = 0; axis < N; ++axis)
    for (int side = 0; side < 2; ++side)
      for (int flat = 0; flat < static_cast<int>(std::pow(blat, N - 1));
           ++flat) {
        Vector x(N);
        x[axis] = side ? config.box_hi[axis] : config.box_lo[axis];
        int m = flat;
        for (int b = 0; b < N; ++b) {
          if (b == axis) continue;
          x[b] = config.box_lo[b] +
                 (config.box_hi[b] - config.box_lo[b]) * (m % blat) /
                     (blat - 1);
          m /= blat;
        }
        boundary_pts.push_back(std::move(x));
      }

  parallel_for(members, [&](int n) {
    const BubbleSumField f = config.member(n);
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& x : sigma_pts) mx = std::max(mx, f.field(x));
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& x : boundary_pts) mn = std::min(mn, f.field(x));
    out.max_sigma[n] = mx;
    out.inf_omega[n] = mn;
    out.combination[n] = mx + C1 * mn;
  });

  std::vector<double> xs(members);
  for (int n = 0; n < members; ++n) xs[n] = std::log(config.lambda_schedule[n]);
  const LinearFit fit = fit_line(xs, out.combination);
  out.slope = fit.slope;
  out.slope_se = fit.slope_se;
  out.predicted_slope = N - C1 * N / (N - 1.0);
  out.bounded = fit.slope <= 3.0 * std::max(fit.slope_se, 1e-12);
  return out;
}

HarnackResult annulus_harnack_experiment(
    const std::function<double(const Vector&)>& u, const Vector& center,
    const std::vector<double>& r_list, const NormSpec& spec, int N) {
  if (r_list.empty() ||
      *std::min_element(r_list.begin(), r_list.end()) <= 0.0)
    throw std::invalid_argument("annulus_harnack: radii must be positive");
  if (N != spec.dim || (N != 2 && N != 3))
    throw std::invalid_argument("annulus_harnack: dim 2 or 3 only");

  HarnackResult out;
  out.M = -std::numeric_limits<double>::infinity();
  std::vector<Vector> dirs;
  if (N == 2) {
    const int count = 720;
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * M_PI * i / count;
      Vector w(2);
      w << std::cos(t), std::sin(t);
      dirs.push_back(std::move(w));
    }
  } else {
    const int nt = 90, np = 180;
    for (int i = 1; i < nt; ++i)
      for (int j = 0; j < np; ++j) {
        const double th = M_PI * i / nt, ph = 2.0 * M_PI * j / np;
        Vector w(3);
        w << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
            std::cos(th);
        dirs.push_back(std::move(w));
      }
    Vector up(3), down(3);
    up << 0, 0, 1;
    down << 0, 0, -1;
    dirs.push_back(up);
    dirs.push_back(down);
  }

  for (double r : r_list) {
    HarnackSample s;
    s.r = r;
    s.sup = -std::numeric_limits<double>::infinity();
    s.inf = std::numeric_limits<double>::infinity();
    for (const auto& w : dirs) {
      const Vector x = center + (r / dual_norm(spec, w)) * w;
      const double val = u(x);
      s.sup = std::max(s.sup, val);
      s.inf = std::min(s.inf, val);
      out.M = std::max(out.M, val + N * std::log(r));
    }
    out.spheres.push_back(s);
  }

  // Fit sup + N ln r against inf + N ln r; the slope is alpha, then take
  // the smallest C closing the inequality for that alpha.
  std::vector<double> a, b;
  for (const auto& s : out.spheres) {
    a.push_back(s.sup + N * std::log(s.r));
    b.push_back(s.inf + N * std::log(s.r));
  }
  double alpha = 1.0;
  if (out.spheres.size() >= 2) {
    const LinearFit fit = fit_line(b, a);
    alpha = std::clamp(fit.slope, 1e-6, 1.0);
  }
  double C = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < a.size(); ++i) C = std::max(C, a[i] - alpha * b[i]);
  out.alpha = alpha;
  out.C = C;
  out.verified = true;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > alpha * b[i] + C + 1e-9) out.verified = false;
  return out;
}

SinglenessResult singleness_check(const FamilyConfig& config, const Vector& a1,
                                  double R, double growth_tol) {
  config.validate();
  if (!(R > 0.0)) throw std::invalid_argument("singleness_check: R <= 0");
  const int N = config.N;
  const int members = static_cast<int>(config.lambda_schedule.size());

  // Candidate points: log-spaced radii along many directions from a1,
  // plus the bubble centers themselves (where shifted growth shows up).
  std::vector<Vector> dirs;
  if (N == 2) {
    for (int i = 0; i < 128; ++i) {
      const double t = 2.0 * M_PI * i / 128;
      Vector w(2);
      w << std::cos(t), std::sin(t);
      dirs.push_back(std::move(w));
    }
  } else {
    const int nt = 12, np = 24;
    for (int i = 1; i < nt; ++i)
      for (int j = 0; j < np; ++j) {
        const double th = M_PI * i / nt, ph = 2.0 * M_PI * j / np;
        Vector w(N);
        w.setZero();
        w[0] = std::sin(th) * std::cos(ph);
        w[1] = std::sin(th) * std::sin(ph);
        w[2] = std::cos(th);
        dirs.push_back(std::move(w));
      }
  }
  std::vector<Vector> candidates;
  for (const auto& w : dirs) {
    const double reach = R / dual_norm(config.norm, w);
    for (double s : log_panels(reach * 1e-10, reach, 20))
      candidates.push_back(a1 + s * w);
  }
  for (const auto& c : config.centers) {
    const double off = dual_norm(config.norm, c - a1);
    if (off > 0.0 && off < R) candidates.push_back(c);
  }

  SinglenessResult out;
  out.sup_per_member.resize(members);
  parallel_for(members, [&](int n) {
    const BubbleSumField f = config.member(n);
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& x : candidates) {
      const double d = dual_norm(config.norm, x - a1);
      if (d <= 0.0 || d > R) continue;
      sup = std::max(sup, f.field(x) + N * std::log(d));
    }
    out.sup_per_member[n] = sup;
  });
  out.overall_sup =
      *std::max_element(out.sup_per_member.begin(), out.sup_per_member.end());
  out.growth = out.sup_per_member.back() - out.sup_per_member.front();
  out.satisfied =
      std::isfinite(out.overall_sup) && out.growth <= growth_tol;
  return out;
}

}  // namespace wulff
