#include "wulff/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wulff/quadrature.hpp"

namespace wulff {

double liouville_constant(int N) {
  if (N < 2) throw std::invalid_argument("liouville_constant: N must be >= 2");
  const double n = N;
  return n * std::pow(n * n / (n - 1.0), n - 1.0);
}

double euclidean_ball_volume(int N) {
  if (N < 1) throw std::invalid_argument("euclidean_ball_volume: N >= 1");
  return std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

double wulff_kappa(const NormSpec& spec) {
  spec.validate();
  if (spec.family == NormFamily::WeightedEuclidean) {
    // Wulff ball is the ellipsoid with semi-axes w_i.
    return euclidean_ball_volume(spec.dim) * spec.weights.prod();
  }
  // Wulff ball of the q-norm is the unit ball of the conjugate exponent:
  // |{sum |x_i|^p < 1}| = (2 Gamma(1+1/p))^N / Gamma(1+N/p).
  const double p = spec.q / (spec.q - 1.0);
  const int n = spec.dim;
  double lg = n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) -
              std::lgamma(1.0 + n / p);
  return std::exp(lg);
}

namespace {

// Support radius of the Wulff ball along direction omega (|omega| = 1).
double support_radius(const NormSpec& spec, const Vector& omega) {
  return 1.0 / dual_norm(spec, omega);
}

double volume_quadrature_2d(const NormSpec& spec, double tol) {
  auto integrand = [&](double theta) {
    Vector w(2);
    w << std::cos(theta), std::sin(theta);
    const double rho = support_radius(spec, w);
    return 0.5 * rho * rho;
  };
  // Split at the axes where q-norm support radii lose smoothness.
  std::vector<double> pts = {0.0, 0.5 * M_PI, M_PI, 1.5 * M_PI, 2.0 * M_PI};
  return integrate_panels(integrand, pts, tol);
}

double volume_quadrature_3d(const NormSpec& spec, double tol) {
  auto shell = [&](double theta) {
    const double st = std::sin(theta), ct = std::cos(theta);
    auto ring = [&](double phi) {
      Vector w(3);
      w << st * std::cos(phi), st * std::sin(phi), ct;
      const double rho = support_radius(spec, w);
      return rho * rho * rho / 3.0;
    };
    std::vector<double> pts = {0.0, 0.5 * M_PI, M_PI, 1.5 * M_PI, 2.0 * M_PI};
    return st * integrate_panels(ring, pts, 0.05 * tol);
  };
  std::vector<double> pts = {0.0, 0.5 * M_PI, M_PI};
  return integrate_panels(shell, pts, tol);
}

VolumeEstimate volume_monte_carlo(const NormSpec& spec, int N,
                                  const VolumeOptions& opts) {
  // Bounding box: |x_i| <= max support radius along axis i.
  Vector half(N);
  for (int i = 0; i < N; ++i) {
    Vector e = Vector::Zero(N);
    e[i] = 1.0;
    half[i] = support_radius(spec, e);
  }
  const double box = std::pow(2.0, N) * half.prod();
  std::mt19937_64 rng(opts.seed);
  std::int64_t hits = 0;
  Vector x(N);
  for (std::int64_t s = 0; s < opts.samples; ++s) {
    for (int i = 0; i < N; ++i)
      x[i] = (2.0 * uniform_unit(rng()) - 1.0) * half[i];
    if (dual_norm(spec, x) < 1.0) ++hits;
  }
  const double p = static_cast<double>(hits) / opts.samples;
  VolumeEstimate est;
  est.value = p * box;
  est.std_error = box * std::sqrt(p * (1.0 - p) / opts.samples);
  return est;
}

}  // namespace

VolumeEstimate wulff_volume(const NormSpec& spec, int N,
                            const VolumeOptions& opts) {
  spec.validate();
  if (N != spec.dim)
    throw std::invalid_argument("wulff_volume: N must equal spec.dim");
  if (opts.method == VolumeMethod::MonteCarlo)
    return volume_monte_carlo(spec, N, opts);
  VolumeEstimate est;
  if (N == 2)
    est.value = volume_quadrature_2d(spec, opts.tol);
  else if (N == 3)
    est.value = volume_quadrature_3d(spec, opts.tol);
  else
    throw std::invalid_argument(
        "wulff_volume: quadrature supports dim 2 and 3; use Monte Carlo");
  return est;
}

WulffGeometry WulffGeometry::of(const NormSpec& spec) {
  WulffGeometry g;
  g.N = spec.dim;
  g.kappa = wulff_kappa(spec);
  g.c_N = liouville_constant(spec.dim);
  g.omega_N = euclidean_ball_volume(spec.dim);
  return g;
}

}  // namespace wulff
