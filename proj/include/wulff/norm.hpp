#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace wulff {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class NormFamily { QNorm, WeightedEuclidean };

/// Parametric description of an admissible anisotropic norm F.
/// Families are a closed set: F must be C^2 away from the origin with
/// two-sided Euclidean bounds, which cannot be checked for black-box input.
struct NormSpec {
  NormFamily family = NormFamily::QNorm;
  double q = 2.0;          // q-norm exponent, in (1, inf)
  Vector weights;          // weighted Euclidean: F(xi) = |diag(w) xi|
  int dim = 2;

  static NormSpec q_norm(double q, int dim);
  static NormSpec euclidean(int dim) { return q_norm(2.0, dim); }
  static NormSpec weighted(const Vector& w);

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  bool is_euclidean() const {
    return family == NormFamily::QNorm && q == 2.0;
  }

  /// Two-sided comparison constants: c1 |xi| <= F(xi) <= c2 |xi|.
  double lower_comparison() const;
  double upper_comparison() const;
};

/// F(xi).  Positively 1-homogeneous, even, zero only at the origin.
double eval_norm(const NormSpec& spec, const Eigen::Ref<const Vector>& xi);

/// F_xi(xi), the gradient of F; 0-homogeneous, satisfies the Euler identity
/// <F_xi(xi), xi> = F(xi).  Throws on xi = 0.
Vector eval_norm_gradient(const NormSpec& spec,
                          const Eigen::Ref<const Vector>& xi);

/// The flux A(xi) = F^(N-1)(xi) F_xi(xi) with A(0) = 0 (continuous
/// extension; the homogeneity degree N-1 is positive).
Vector eval_flux(const NormSpec& spec, int N,
                 const Eigen::Ref<const Vector>& xi);

/// Hessian of F^2/2, the symmetric positive semidefinite matrix
/// H2 = F_xi F_xi^T + F F_xixi (0-homogeneous).  For q < 2 the exact
/// Hessian blows up where a component of xi vanishes; components are
/// clamped to `component_floor` in magnitude for that evaluation only.
/// Used by the Newton solver's Jacobian, never by residual evaluation.
Matrix norm_hessian2(const NormSpec& spec, const Eigen::Ref<const Vector>& xi,
                     double component_floor = 0.0);

/// Closed-form dual norm F0(x) = sup{<x, xi> : F(xi) <= 1}.
/// q-norm dualizes to the conjugate exponent q' (1/q + 1/q' = 1);
/// weighted Euclidean dualizes to the reciprocal weights.
double dual_norm(const NormSpec& spec, const Eigen::Ref<const Vector>& x);

/// Gradient of the dual norm; by the envelope theorem this is the
/// maximizer xi* of <x, xi> over {F = 1}.  Throws on x = 0.
Vector dual_norm_gradient(const NormSpec& spec,
                          const Eigen::Ref<const Vector>& x);

struct AscentResult {
  double value = 0.0;      // F0(x)
  Vector maximizer;        // xi* on {F = 1}, also grad F0(x)
  int iterations = 0;
};

/// Numeric dual norm by gradient ascent of <x, xi>/F(xi) on the unit
/// F-sphere.  Independent of the closed forms above; used to cross-check
/// them and to expose the generic route the contract specifies.
/// Throws on non-convergence within `max_iter`.
AscentResult dual_norm_ascent(const NormSpec& spec,
                              const Eigen::Ref<const Vector>& x,
                              double tol = 1e-10, int max_iter = 10000);

/// String form used in reports ("q_norm(q=1.5, dim=2)" etc).
std::string describe(const NormSpec& spec);

}  // namespace wulff
