#include "wulff/bubble.hpp"

#include <cmath>
#include <stdexcept>

#include "wulff/quadrature.hpp"

namespace wulff {

BubbleParams BubbleParams::make(const NormSpec& norm, double lambda,
                                const Vector& p, double V0) {
  BubbleParams b;
  b.norm = norm;
  b.lambda = lambda;
  b.p = p;
  b.V0 = V0;
  b.N = norm.dim;
  b.validate();
  return b;
}

void BubbleParams::validate() const {
  norm.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("BubbleParams: lambda <= 0");
  if (!(V0 > 0.0)) throw std::invalid_argument("BubbleParams: V0 <= 0");
  if (N != norm.dim) throw std::invalid_argument("BubbleParams: N != norm.dim");
  if (p.size() != N) throw std::invalid_argument("BubbleParams: center dim");
}

double BubbleParams::peak_value() const {
  return std::log(liouville_constant(N)) + N * std::log(lambda) -
         std::log(V0);
}

double bubble_profile(const BubbleParams& params, double r) {
  const double m = static_cast<double>(params.N) / (params.N - 1);
  // log1p keeps the far field accurate when (lambda r)^m is huge or tiny.
  return params.peak_value() -
         params.N * std::log1p(std::pow(params.lambda * r, m));
}

double bubble_eval(const BubbleParams& params,
                   const Eigen::Ref<const Vector>& x) {
  return bubble_profile(params, dual_norm(params.norm, x - params.p));
}

double bubble_mass(const BubbleParams& params, double quad_tol) {
  params.validate();
  if (!(quad_tol > 0.0)) throw std::invalid_argument("bubble_mass: tol <= 0");
  const int N = params.N;
  const double kappa = wulff_kappa(params.norm);
  const double cN = liouville_constant(N);
  // V0 e^u dx radializes to N kappa C_N lambda^N r^(N-1)(1+(lambda r)^m)^-N dr;
  // with s = (lambda r)^m this is C_N kappa (N-1) int_0^inf s^(N-2)(1+s)^-N ds,
  // and s = 1/t turns the tail into int_0^1 (1+t)^-N dt.
  auto head = [N](double s) {
    return std::pow(s, N - 2) * std::pow(1.0 + s, -N);
  };
  auto tail = [N](double t) { return std::pow(1.0 + t, -N); };
  const double scale = cN * kappa * (N - 1);
  const double tol = quad_tol * scale;
  const double integral = integrate_adaptive(head, 0.0, 1.0, 0.5 * tol / scale) +
                          integrate_adaptive(tail, 0.0, 1.0, 0.5 * tol / scale);
  return scale * integral;
}

double lambda_from_peak(int N, double V0) {
  if (!(V0 > 0.0)) throw std::invalid_argument("lambda_from_peak: V0 <= 0");
  return std::pow(V0 / liouville_constant(N), 1.0 / N);
}

}  // namespace wulff
