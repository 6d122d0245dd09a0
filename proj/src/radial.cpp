#include "wulff/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wulff/quadrature.hpp"

namespace wulff {

void RadialProfile::validate() const {
  if (r.size() < 2 || r.size() != values.size())
    throw std::invalid_argument("RadialProfile: need >= 2 matching samples");
  if (r[0] != 0.0)
    throw std::invalid_argument("RadialProfile: samples must start at r = 0");
  for (Eigen::Index i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1]))
      throw std::invalid_argument("RadialProfile: r must increase strictly");
  if (!values.allFinite())
    throw std::invalid_argument("RadialProfile: non-finite value");
}

Eigen::VectorXd RadialProfile::log_spaced(double R, int count,
                                          double r_min_ratio) {
  if (count < 3 || R <= 0.0)
    throw std::invalid_argument("RadialProfile::log_spaced: bad arguments");
  Eigen::VectorXd r(count);
  r[0] = 0.0;
  const double lo = R * r_min_ratio;
  for (int i = 1; i < count; ++i)
    r[i] = lo * std::pow(R / lo, static_cast<double>(i - 1) / (count - 2));
  r[count - 1] = R;
  return r;
}

MonotoneCubic::MonotoneCubic(const RadialProfile& p) {
  p.validate();
  const int n = static_cast<int>(p.r.size());
  x_.assign(p.r.data(), p.r.data() + n);
  y_.assign(p.values.data(), p.values.data() + n);
  d_.assign(n, 0.0);
  std::vector<double> h(n - 1), s(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    h[i] = x_[i + 1] - x_[i];
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  for (int i = 1; i < n - 1; ++i) {
    if (s[i - 1] * s[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double s0, double s1) {
    double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (d * s0 <= 0.0) return 0.0;
    if (s0 * s1 < 0.0 && std::abs(d) > 3.0 * std::abs(s0)) return 3.0 * s0;
    return d;
  };
  if (n == 2) {
    d_[0] = d_[1] = s[0];
  } else {
    d_[0] = endpoint(h[0], h[1], s[0], s[1]);
    d_[n - 1] = endpoint(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
  }
}

double MonotoneCubic::operator()(double t) const {
  t = std::clamp(t, x_.front(), x_.back());
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const size_t i = std::min(x_.size() - 2,
                            static_cast<size_t>(std::max<std::ptrdiff_t>(
                                0, it - x_.begin() - 1)));
  const double h = x_[i + 1] - x_[i];
  const double u = (t - x_[i]) / h;
  const double u2 = u * u, u3 = u2 * u;
  return y_[i] * (2 * u3 - 3 * u2 + 1) + y_[i + 1] * (-2 * u3 + 3 * u2) +
         d_[i] * h * (u3 - 2 * u2 + u) + d_[i + 1] * h * (u3 - u2);
}

namespace {

struct CumulativeBallIntegral {
  // G(t) = int_0^t f(s) s^(N-1) ds with f the monotone-cubic interpolant;
  // prefix sums at the knots, Gauss-Legendre on partial intervals.  The
  // integrand is piecewise polynomial of degree <= N+2, which the 8-point
  // rule integrates exactly for the dimensions used here.
  CumulativeBallIntegral(const MonotoneCubic& f, int N) : f_(f), N_(N) {
    const auto& knots = f.knots();
    prefix_.assign(knots.size(), 0.0);
    for (size_t i = 0; i + 1 < knots.size(); ++i)
      prefix_[i + 1] = prefix_[i] + segment(knots[i], knots[i + 1]);
  }

  double operator()(double t) const {
    const auto& knots = f_.knots();
    t = std::clamp(t, knots.front(), knots.back());
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const size_t i = static_cast<size_t>(
        std::max<std::ptrdiff_t>(0, it - knots.begin() - 1));
    return prefix_[i] + segment(knots[i], t);
  }

 private:
  double segment(double a, double b) const {
    if (b <= a) return 0.0;
    return integrate_fixed(
        [&](double s) { return f_(s) * std::pow(s, N_ - 1); }, a, b, 8);
  }

  const MonotoneCubic& f_;
  int N_;
  std::vector<double> prefix_;
};

void check_radial_args(const RadialProfile& f, double R, int N, double kappa) {
  f.validate();
  if (N < 2) throw std::invalid_argument("radial: N must be >= 2");
  if (!(kappa > 0.0)) throw std::invalid_argument("radial: kappa must be > 0");
  if (!(R > 0.0) || R > f.r[f.r.size() - 1])
    throw std::invalid_argument("radial: R outside profile range");
  if (f.values.minCoeff() < 0.0)
    throw std::invalid_argument("radial: f must be nonnegative");
}

}  // namespace

RadialProfile radial_solve(const RadialProfile& f, double R, int N,
                           double kappa, double tol) {
  check_radial_args(f, R, N, kappa);
  const MonotoneCubic fc(f);
  const CumulativeBallIntegral ball(fc, N);
  const double exponent = 1.0 / (N - 1);
  const double sharp = std::pow(N * kappa, -exponent);
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::pow(N * kappa * ball(t), exponent) / t;
  };

  // Output samples: f's grid restricted to [0, R], with R appended.
  std::vector<double> out_r;
  for (Eigen::Index i = 0; i < f.r.size(); ++i)
    if (f.r[i] < R) out_r.push_back(f.r[i]);
  out_r.push_back(R);

  RadialProfile u0;
  const int n = static_cast<int>(out_r.size());
  const double seg_tol = tol / n;
  u0.r.resize(n);
  u0.values.resize(n);
  // Accumulate int_r^R backwards so u0(R) = 0 holds exactly.  Near 0 the
  // integrand behaves like t^(N/(N-1)-1): integrable, but with infinite
  // slope for N > 2, hence the log-spaced panels on the first segment.
  double acc = 0.0;
  u0.r[n - 1] = out_r[n - 1];
  u0.values[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; --i) {
    const double a = out_r[i], b = out_r[i + 1];
    double seg;
    if (a == 0.0) {
      const auto pts = log_panels(std::max(b * 1e-12, 1e-300), b, 3, true);
      seg = integrate_panels(integrand, pts, seg_tol);
    } else {
      seg = integrate_adaptive(integrand, a, b, seg_tol);
    }
    acc += seg;
    u0.r[i] = a;
    u0.values[i] = sharp * acc;
  }
  return u0;
}

double harnack_lower_bound(const RadialProfile& f, double r, double R, int N,
                           double kappa, double tol) {
  f.validate();
  if (N < 2) throw std::invalid_argument("harnack_lower_bound: N must be >= 2");
  if (!(kappa > 0.0))
    throw std::invalid_argument("harnack_lower_bound: kappa must be > 0");
  if (!(r > 0.0) || !(r < R))
    throw std::invalid_argument("harnack_lower_bound: need 0 < r < R");
  if (r > f.r[f.r.size() - 1])
    throw std::invalid_argument("harnack_lower_bound: r outside profile range");
  if (f.values.minCoeff() < 0.0)
    throw std::invalid_argument("harnack_lower_bound: f must be nonnegative");
  (void)tol;
  const MonotoneCubic fc(f);
  const CumulativeBallIntegral ball(fc, N);
  // (N kappa)^(-1/(N-1)) * (N kappa G(r))^(1/(N-1)): the kappa factors
  // cancel, leaving G(r)^(1/(N-1)).
  return std::pow(ball(r), 1.0 / (N - 1)) * std::log(R / r);
}

}  // namespace wulff
