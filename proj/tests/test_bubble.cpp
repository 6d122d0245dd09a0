#include "wulff/bubble.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace wulff;

namespace {

BubbleParams standard_bubble(const NormSpec& norm, double lambda,
                             double V0 = 1.0) {
  return BubbleParams::make(norm, lambda, Vector::Zero(norm.dim), V0);
}

}  // namespace

TEST_CASE("bubble point values") {
  const BubbleParams b = standard_bubble(NormSpec::euclidean(2), 1.0);
  CHECK(bubble_eval(b, Vector::Zero(2).eval()) ==
        doctest::Approx(std::log(8.0)).epsilon(1e-14));
  Vector x(2);
  x << 1.0, 0.0;
  // ln(8 / (1+1)^2) = ln 2
  CHECK(bubble_eval(b, x) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  // peak value formula
  const BubbleParams c = standard_bubble(NormSpec::q_norm(1.5, 2), 37.0, 4.0);
  CHECK(bubble_eval(c, Vector::Zero(2).eval()) ==
        doctest::Approx(std::log(8.0 * std::pow(37.0, 2) / 4.0)).epsilon(1e-13));
}

TEST_CASE("peak normalization lambda") {
  CHECK(lambda_from_peak(2, 8.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambda_from_peak(2, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-15));
  CHECK_THROWS_AS(lambda_from_peak(2, 0.0), std::invalid_argument);

  for (int N : {2, 3, 4}) {
    for (double V0 : {0.3, 1.0, 5.0}) {
      const NormSpec norm = NormSpec::q_norm(2.0, N);
      const BubbleParams b =
          standard_bubble(norm, lambda_from_peak(N, V0), V0);
      CHECK(std::abs(bubble_eval(b, Vector::Zero(N).eval())) <= 1e-12);
    }
  }
}

TEST_CASE("radial monotonicity in the dual norm") {
  std::mt19937_64 rng(5);
  const NormSpec norm = NormSpec::q_norm(3.0, 2);
  Vector p(2);
  p << 0.2, -0.1;
  const BubbleParams b = BubbleParams::make(norm, 2.5, p);
  for (int i = 0; i < 200; ++i) {
    const Vector x1 = oracle::random_vector(rng, 2, -2.0, 2.0);
    const Vector x2 = oracle::random_vector(rng, 2, -2.0, 2.0);
    const double r1 = dual_norm(norm, x1 - p), r2 = dual_norm(norm, x2 - p);
    if (r1 < r2)
      CHECK(bubble_eval(b, x1) > bubble_eval(b, x2));
  }
}

TEST_CASE("bubble mass equals C_N kappa for every family and lambda") {
  for (const NormSpec& norm :
       {NormSpec::q_norm(1.5, 2), NormSpec::euclidean(2),
        NormSpec::q_norm(3.0, 3),
        NormSpec::weighted((Eigen::VectorXd(2) << 1.0, 2.0).finished())}) {
    const double expected =
        liouville_constant(norm.dim) * wulff_kappa(norm);
    for (double lambda : {1.0, 1e3, 1e6}) {
      const double mass = bubble_mass(standard_bubble(norm, lambda), 1e-10);
      CHECK(mass == doctest::Approx(expected).epsilon(1e-9));
    }
  }
  // N=2 Euclidean: the classical 8 pi
  CHECK(bubble_mass(standard_bubble(NormSpec::euclidean(2), 1.0)) ==
        doctest::Approx(8.0 * M_PI).epsilon(1e-8));
  // N=3 Euclidean: C_3 kappa_3 = 60.75 * 4pi/3 = 81 pi
  CHECK(bubble_mass(standard_bubble(NormSpec::euclidean(3), 1.0)) ==
        doctest::Approx(81.0 * M_PI).epsilon(1e-8));
}

TEST_CASE("mass does not depend on lambda, center or V0") {
  std::mt19937_64 rng(9);
  const NormSpec norm = NormSpec::q_norm(1.5, 2);
  std::vector<double> masses;
  for (int i = 0; i < 10; ++i) {
    const double lambda = std::pow(10.0, oracle::uniform(rng, 0.0, 10.0));
    const Vector p = oracle::random_vector(rng, 2, -5.0, 5.0);
    const double V0 = std::pow(10.0, oracle::uniform(rng, -2.0, 2.0));
    masses.push_back(bubble_mass(BubbleParams::make(norm, lambda, p, V0), 1e-8));
  }
  const double lo = *std::min_element(masses.begin(), masses.end());
  const double hi = *std::max_element(masses.begin(), masses.end());
  CHECK((hi - lo) / hi <= 2e-8);
}

TEST_CASE("radialized mass matches a Monte-Carlo box integral") {
  const NormSpec norm = NormSpec::q_norm(3.0, 2);
  const BubbleParams b = standard_bubble(norm, 1.0);
  auto density = [&](const Eigen::VectorXd& x) {
    return std::exp(bubble_eval(b, x));
  };
  // mass inside the box; the tail outside |x|_inf <= 30 is well below the
  // Monte-Carlo resolution at these sample counts
  const auto [mc, se] = oracle::mc_box_integral(density, 2, -30.0, 30.0,
                                                2'000'000, 20250809);
  const double exact = bubble_mass(b, 1e-10);
  CHECK(std::abs(mc - exact) <= 3.0 * se);
}

TEST_CASE("rescaling closure: u(delta x + p) + N ln delta is again a bubble") {
  std::mt19937_64 rng(21);
  for (const NormSpec& norm :
       {NormSpec::euclidean(2), NormSpec::q_norm(1.5, 3)}) {
    const int N = norm.dim;
    const Vector p = oracle::random_vector(rng, N, -1.0, 1.0);
    const BubbleParams b = BubbleParams::make(norm, 3.0, p, 2.0);
    const double delta = 0.125;
    const Vector q = oracle::random_vector(rng, N, -1.0, 1.0);
    // pulled back around q: x -> delta x + q
    const BubbleParams rescaled =
        BubbleParams::make(norm, 3.0 * delta, ((p - q) / delta).eval(), 2.0);
    for (int i = 0; i < 100; ++i) {
      const Vector x = oracle::random_vector(rng, N, -4.0, 4.0);
      const double lhs =
          bubble_eval(b, (delta * x + q).eval()) + N * std::log(delta);
      CHECK(lhs == doctest::Approx(bubble_eval(rescaled, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bubble parameter validation") {
  CHECK_THROWS_AS(
      BubbleParams::make(NormSpec::euclidean(2), -1.0, Vector::Zero(2)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      BubbleParams::make(NormSpec::euclidean(2), 1.0, Vector::Zero(3)),
      std::invalid_argument);
  CHECK_THROWS_AS(bubble_mass(standard_bubble(NormSpec::euclidean(2), 1.0), 0.0),
                  std::invalid_argument);
}
