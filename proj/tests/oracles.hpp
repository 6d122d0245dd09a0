// Test-only oracles: independent routes to the quantities the library
// computes.  Nothing here calls the implementation paths under test.
#pragma once

#include <cmath>
#include <random>

#include <Eigen/Core>

namespace oracle {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int dim, double lo,
                                     double hi) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

/// Holder-dual of the q-norm: the q'-norm with 1/q + 1/q' = 1.
inline double dual_qnorm(double q, const Eigen::VectorXd& x) {
  const double qp = q / (q - 1.0);
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), qp);
  return std::pow(s, 1.0 / qp);
}

/// Dual of the weighted Euclidean norm sqrt(sum (w_i xi_i)^2).
inline double dual_weighted(const Eigen::VectorXd& w, const Eigen::VectorXd& x) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += (x[i] / w[i]) * (x[i] / w[i]);
  return std::sqrt(s);
}

inline double liouville_c(int N) {
  return N * std::pow(double(N) * N / (N - 1.0), N - 1.0);
}

/// Bubble mass inside the Wulff ball of radius rho, in closed form:
///   C_N kappa (S/(1+S))^(N-1),  S = (lambda rho)^(N/(N-1)).
/// Obtained by integrating the radialized density exactly.
inline double bubble_partial_mass(int N, double kappa, double lambda,
                                  double rho) {
  const double S = std::pow(lambda * rho, double(N) / (N - 1));
  return liouville_c(N) * kappa * std::pow(S / (1.0 + S), N - 1);
}

/// Its complement, numerically stable for huge S.
inline double bubble_tail_mass(int N, double kappa, double lambda,
                               double rho) {
  const double S = std::pow(lambda * rho, double(N) / (N - 1));
  // 1 - (S/(1+S))^(N-1) = 1 - (1+1/S)^(1-N)
  const double t = -std::expm1((1.0 - N) * std::log1p(1.0 / S));
  return liouville_c(N) * kappa * t;
}

/// Closed-form radial solution for constant right-hand side f = c:
///   u0(r) = (c/N)^(1/(N-1)) (N-1)/N (R^(N/(N-1)) - r^(N/(N-1))).
inline double radial_const_solution(int N, double c, double R, double r) {
  const double m = double(N) / (N - 1);
  return std::pow(c / N, 1.0 / (N - 1)) * ((N - 1.0) / N) *
         (std::pow(R, m) - std::pow(r, m));
}

/// Monte-Carlo integral of `f` over the box [lo, hi]^dim; returns the
/// estimate and its standard error.
template <typename F>
inline std::pair<double, double> mc_box_integral(F&& f, int dim, double lo,
                                                 double hi, long samples,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0.0, sumsq = 0.0;
  Eigen::VectorXd x(dim);
  for (long s = 0; s < samples; ++s) {
    for (int i = 0; i < dim; ++i) x[i] = uniform(rng, lo, hi);
    const double v = f(x);
    sum += v;
    sumsq += v * v;
  }
  const double vol = std::pow(hi - lo, dim);
  const double mean = sum / samples;
  const double var = std::max(0.0, sumsq / samples - mean * mean);
  return {vol * mean, vol * std::sqrt(var / samples)};
}

}  // namespace oracle
