#pragma once

#include <vector>

#include <Eigen/Core>

namespace wulff {

/// Sampled function of the Wulff-radial variable r = F0(x - p).
struct RadialProfile {
  Eigen::VectorXd r;       // strictly increasing, r[0] = 0
  Eigen::VectorXd values;

  void validate() const;

  template <typename F>
  static RadialProfile sample(F&& f, const Eigen::VectorXd& r) {
    RadialProfile p;
    p.r = r;
    p.values.resize(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) p.values[i] = f(r[i]);
    p.validate();
    return p;
  }

  /// 0, then `count-1` geometrically spaced points ending at R.
  /// Dense enough sampling keeps the interpolation error below the
  /// quadrature tolerances used downstream.
  static Eigen::VectorXd log_spaced(double R, int count, double r_min_ratio = 1e-8);
};

/// Fritsch-Carlson monotone cubic (pchip).  No overshoot: values stay in
/// the local data range, so nonnegative data gives a nonnegative
/// interpolant and monotone data a monotone one.
class MonotoneCubic {
 public:
  explicit MonotoneCubic(const RadialProfile& p);
  double operator()(double t) const;
  double min_knot() const { return x_.front(); }
  double max_knot() const { return x_.back(); }
  const std::vector<double>& knots() const { return x_; }

 private:
  std::vector<double> x_, y_, d_;
};

/// Exact radial solution of -Q_N u0 = f on the Wulff ball B_R with
/// u0 = 0 on the boundary:
///   u0(r) = (N kappa)^(-1/(N-1)) int_r^R (int_{B_t} f dx)^(1/(N-1)) dt/t,
/// where int_{B_t} f dx = N kappa int_0^t f(s) s^(N-1) ds.
/// Returned on the sample points of f clipped to [0, R] (R appended).
RadialProfile radial_solve(const RadialProfile& f, double R, int N,
                           double kappa, double tol = 1e-10);

/// Sharp radial Harnack bound for u(p) - inf over B_R:
///   (N kappa)^(-1/(N-1)) (int_{B_r} f dx)^(1/(N-1)) ln(R/r),  0 < r < R.
double harnack_lower_bound(const RadialProfile& f, double r, double R, int N,
                           double kappa, double tol = 1e-10);

}  // namespace wulff
