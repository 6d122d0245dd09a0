#pragma once

#include <cstdint>

#include "wulff/norm.hpp"

namespace wulff {

/// C_N = N (N^2/(N-1))^(N-1); C_N * kappa is the mass of one bubble.
double liouville_constant(int N);

/// Volume of the Euclidean unit ball in dimension N.
double euclidean_ball_volume(int N);

/// Exact volume of the unit Wulff ball {F0 < 1} for the built-in
/// families: a q'-ball (Dirichlet's formula) or an ellipsoid.
double wulff_kappa(const NormSpec& spec);

enum class VolumeMethod { Quadrature, MonteCarlo };

struct VolumeOptions {
  VolumeMethod method = VolumeMethod::Quadrature;
  double tol = 1e-10;           // quadrature tolerance
  std::int64_t samples = 10'000'000;  // Monte Carlo draws
  std::uint64_t seed = 12345;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for quadrature
};

/// kappa = |{x : F0(x) < 1}| by the requested method.  Quadrature
/// parametrizes the boundary through the support radius 1/F0(omega)
/// (polar in 2D, spherical product in 3D); Monte Carlo rejects against
/// the bounding box and reports the binomial standard error.
/// Quadrature above dimension 3 is not provided; use Monte Carlo there.
VolumeEstimate wulff_volume(const NormSpec& spec, int N,
                            const VolumeOptions& opts = {});

/// Dimension, exact kappa and the constants used throughout.
struct WulffGeometry {
  int N = 2;
  double kappa = 0.0;
  double c_N = 0.0;
  double omega_N = 0.0;

  static WulffGeometry of(const NormSpec& spec);
};

/// Deterministic uniform double in [0, 1) from a raw 64-bit draw;
/// identical across platforms for a given generator stream.
inline double uniform_unit(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

}  // namespace wulff
