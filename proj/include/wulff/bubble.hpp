#pragma once

#include "wulff/geometry.hpp"
#include "wulff/norm.hpp"

namespace wulff {

/// One classified entire solution of -Q_N u = V0 e^u:
///   u(x) = ln[ C_N lambda^N / (V0 (1 + (lambda F0(x-p))^(N/(N-1)))^N) ].
struct BubbleParams {
  double lambda = 1.0;
  Vector p;
  double V0 = 1.0;
  int N = 2;
  NormSpec norm;

  static BubbleParams make(const NormSpec& norm, double lambda,
                           const Vector& p, double V0 = 1.0);

  void validate() const;

  /// u(p) = ln(C_N lambda^N / V0).
  double peak_value() const;
};

/// u at x; strictly decreasing in F0(x - p).
double bubble_eval(const BubbleParams& params,
                   const Eigen::Ref<const Vector>& x);

/// u as a function of the Wulff radius r = F0(x - p).
double bubble_profile(const BubbleParams& params, double r);

/// Total mass integral of V0 e^u over R^N, computed by the radialization
/// identity and the substitution s = (lambda r)^(N/(N-1)), which removes
/// lambda from the integrand entirely and leaves a rational integral with
/// an exactly transformable tail.  Equals C_N kappa up to quadrature error
/// for every admissible lambda, p, V0.
double bubble_mass(const BubbleParams& params, double quad_tol = 1e-8);

/// The unique lambda for which the peak value u(p) is zero:
/// lambda = (V0 / C_N)^(1/N).
double lambda_from_peak(int N, double V0);

}  // namespace wulff
