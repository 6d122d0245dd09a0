#include "wulff/geometry.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace wulff;

TEST_CASE("liouville constant") {
  CHECK(liouville_constant(2) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(liouville_constant(3) == doctest::Approx(60.75).epsilon(1e-15));
  CHECK(liouville_constant(4) ==
        doctest::Approx(4.0 * std::pow(16.0 / 3.0, 3)).epsilon(1e-15));
  CHECK_THROWS_AS(liouville_constant(1), std::invalid_argument);
}

TEST_CASE("euclidean ball volumes") {
  CHECK(euclidean_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(euclidean_ball_volume(3) ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
}

TEST_CASE("quadrature volume: Euclidean disk and ball") {
  const VolumeEstimate disk = wulff_volume(NormSpec::euclidean(2), 2);
  CHECK(disk.value == doctest::Approx(M_PI).epsilon(1e-10));
  const VolumeEstimate ball = wulff_volume(NormSpec::euclidean(3), 3);
  CHECK(ball.value == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-8));
}

TEST_CASE("quadrature volume: weighted norm gives the ellipse area") {
  const NormSpec spec =
      NormSpec::weighted((Eigen::VectorXd(2) << 1.5, 0.7).finished());
  const VolumeEstimate e = wulff_volume(spec, 2);
  CHECK(e.value == doctest::Approx(M_PI * 1.5 * 0.7).epsilon(1e-10));
}

TEST_CASE("monte carlo volume agrees within three standard errors") {
  VolumeOptions opts;
  opts.method = VolumeMethod::MonteCarlo;
  opts.samples = 400'000;
  opts.seed = 99;
  for (const NormSpec& spec :
       {NormSpec::euclidean(2), NormSpec::q_norm(1.5, 2),
        NormSpec::q_norm(3.0, 3),
        NormSpec::weighted((Eigen::VectorXd(2) << 1.0, 2.0).finished())}) {
    const VolumeEstimate mc = wulff_volume(spec, spec.dim, opts);
    const double exact = wulff_kappa(spec);
    REQUIRE(mc.std_error > 0.0);
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.std_error + 1e-12);
  }
}

TEST_CASE("monte carlo is reproducible for a fixed seed") {
  VolumeOptions opts;
  opts.method = VolumeMethod::MonteCarlo;
  opts.samples = 50'000;
  opts.seed = 4242;
  const VolumeEstimate a = wulff_volume(NormSpec::q_norm(3.0, 2), 2, opts);
  const VolumeEstimate b = wulff_volume(NormSpec::q_norm(3.0, 2), 2, opts);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("closed-form kappa against quadrature for every family") {
  for (const NormSpec& spec :
       {NormSpec::q_norm(1.5, 2), NormSpec::q_norm(2.0, 2),
        NormSpec::q_norm(3.0, 2), NormSpec::q_norm(1.5, 3),
        NormSpec::q_norm(3.0, 3),
        NormSpec::weighted((Eigen::VectorXd(3) << 0.5, 1.0, 2.0).finished())}) {
    const double quad = wulff_volume(spec, spec.dim).value;
    CHECK(wulff_kappa(spec) == doctest::Approx(quad).epsilon(1e-7));
  }
}

TEST_CASE("volume argument checks") {
  CHECK_THROWS_AS(wulff_volume(NormSpec::euclidean(2), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(wulff_volume(NormSpec::q_norm(2.0, 4), 4),
                  std::invalid_argument);  // quadrature needs dim <= 3
  VolumeOptions opts;
  opts.method = VolumeMethod::MonteCarlo;
  opts.samples = 10'000;
  CHECK_NOTHROW(wulff_volume(NormSpec::q_norm(2.0, 4), 4, opts));
}

TEST_CASE("wulff geometry bundle") {
  const WulffGeometry g = WulffGeometry::of(NormSpec::euclidean(2));
  CHECK(g.N == 2);
  CHECK(g.c_N == doctest::Approx(8.0));
  CHECK(g.kappa == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(g.omega_N == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(g.c_N * g.kappa == doctest::Approx(8.0 * M_PI).epsilon(1e-10));
}
