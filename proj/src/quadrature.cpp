#include "wulff/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace wulff {

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double integrate_fixed(const std::function<double(double)>& f, double a,
                       double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b,
             double whole, double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double left = integrate_fixed(f, a, m);
  const double right = integrate_fixed(f, m, b);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth >= max_depth) {
    if (depth >= max_depth && err > tol * 64.0)
      throw QuadratureError("adaptive quadrature: max depth reached");
    return left + right;
  }
  return adapt(f, a, m, left, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, m, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double whole = integrate_fixed(f, a, b);
  return adapt(f, a, b, whole, tol, 0, max_depth);
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& pts, double tol) {
  if (pts.size() < 2) return 0.0;
  const double per_panel = tol / static_cast<double>(pts.size() - 1);
  double sum = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    sum += integrate_adaptive(f, pts[i], pts[i + 1], per_panel);
  return sum;
}

std::vector<double> log_panels(double a, double b, int per_decade,
                               bool from_zero) {
  std::vector<double> pts;
  if (from_zero) pts.push_back(0.0);
  if (a <= 0.0 || b <= a) {
    pts.push_back(b);
    return pts;
  }
  const double decades = std::log10(b / a);
  const int n = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  for (int i = 0; i <= n; ++i)
    pts.push_back(a * std::pow(b / a, static_cast<double>(i) / n));
  pts.back() = b;
  return pts;
}

double radial_ball_integral(const std::function<double(double)>& g, int dim,
                            double kappa, double radius, double tol) {
  if (radius <= 0.0) return 0.0;
  auto integrand = [&](double r) {
    return g(r) * std::pow(r, dim - 1);
  };
  // Panels from radius*1e-16 up: anything concentrated tighter than that
  // carries negligible mass for the exponents seen here (integrand ~ r^(N-1)
  // near 0 after the density saturates).
  std::vector<double> pts = log_panels(radius * 1e-16, radius, 2, true);
  return dim * kappa * integrate_panels(integrand, pts, tol / (dim * kappa));
}

double radial_tail_integral(const std::function<double(double)>& g, int dim,
                            double kappa, double lo, double tol) {
  if (lo <= 0.0)
    throw std::invalid_argument("radial_tail_integral: lo must be > 0");
  // r = 1/t maps (lo, inf) to (0, 1/lo); integrand g(1/t) t^(-N-1).
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double r = 1.0 / t;
    return g(r) * std::pow(r, dim + 1);
  };
  std::vector<double> pts = log_panels(1e-14 / lo, 1.0 / lo, 2, true);
  return dim * kappa * integrate_panels(integrand, pts, tol / (dim * kappa));
}

double radial_integral(const std::function<double(double)>& g, int dim,
                       double kappa, double split, double tol) {
  return radial_ball_integral(g, dim, kappa, split, 0.5 * tol) +
         radial_tail_integral(g, dim, kappa, split, 0.5 * tol);
}

}  // namespace wulff
