#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace wulff {

/// Thrown when an adaptive rule cannot reach the requested tolerance.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Computed once per n by Newton iteration on the Legendre recurrence
/// and cached; accurate to machine precision for the small n used here.
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

const GaussRule& gauss_legendre(int n);

/// Fixed n-point Gauss-Legendre quadrature of f over [a, b].
double integrate_fixed(const std::function<double(double)>& f, double a,
                       double b, int n = 15);

/// Adaptive bisection quadrature. The error estimate on each interval is
/// |GL(whole) - GL(left) - GL(right)|; intervals are split until the
/// estimate is below the locally apportioned tolerance.
/// `tol` is absolute; pass tol = rel_tol * |rough value| for relative use.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth = 48);

/// Adaptive quadrature over a list of breakpoints: each panel
/// [pts[i], pts[i+1]] is integrated adaptively.  Used to keep panels away
/// from known kinks (interpolation knots, axis crossings).
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& pts, double tol);

/// Geometric breakpoints a, a*g, ..., b with about `per_decade` points per
/// decade; a must be > 0.  Prepends 0 when `from_zero` is set.
std::vector<double> log_panels(double a, double b, int per_decade = 4,
                               bool from_zero = false);

/// Integral of g(r) r^(dim-1) over [0, inf) against a Wulff-radial weight:
///   N kappa * [ int_0^split g r^(N-1) dr  +  int over (split, inf) ],
/// the unbounded part via the substitution r = 1/t.  `g` must decay fast
/// enough that g(1/t) t^(-N-1) is integrable at t = 0.
double radial_integral(const std::function<double(double)>& g, int dim,
                       double kappa, double split, double tol);

/// Same change of variable restricted to [lo, inf).
double radial_tail_integral(const std::function<double(double)>& g, int dim,
                            double kappa, double lo, double tol);

/// Radialized integral over the Wulff ball of radius `radius`:
///   N kappa int_0^radius g(r) r^(N-1) dr,
/// with log-spaced panels near 0 so sharply concentrated integrands
/// (bubble densities at large lambda) are still resolved.
double radial_ball_integral(const std::function<double(double)>& g, int dim,
                            double kappa, double radius, double tol);

}  // namespace wulff
