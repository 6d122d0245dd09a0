#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wulff/bubble.hpp"
#include "wulff/grid.hpp"
#include "wulff/norm.hpp"

namespace wulff {

/// Analytic multi-peak field built at the density level: the density is
/// the sum of the component densities V0_i e^(u_i), and the field value
/// is u = ln(density / V0) evaluated in log space.  These are not PDE
/// solutions for m > 1; they exercise the mass-measurement arithmetic.
struct BubbleSumField {
  std::vector<BubbleParams> components;

  const NormSpec& norm() const { return components.front().norm; }
  int dim() const { return components.front().N; }

  /// sum_i V0_i e^(u_i(x)), evaluated stably in log space.
  double density(const Eigen::Ref<const Vector>& x) const;
  /// u(x) = ln(density / V0) with V0 from the first component.
  double field(const Eigen::Ref<const Vector>& x) const;
};

/// A concentrating family: bubbles at fixed centers with lambda walking
/// up a schedule (delta_n = e^(-peak/N) shrinks like 1/lambda_n).
struct FamilyConfig {
  int N = 2;
  NormSpec norm;
  std::vector<Vector> centers;
  std::vector<double> lambda_schedule;
  double V0 = 1.0;
  Vector box_lo, box_hi;
  /// Cluster radius multiplier k of the disjointness requirement
  /// B_{2 k delta}(p_i) cap B_{2 k delta}(p_j) = empty; the selection of
  /// k_n -> infinity has no constructive rate, so it is a knob here.
  double k_cluster = 10.0;
  /// 0 = analytic closures; > 0 = sample fields on a grid with this many
  /// nodes per axis (must resolve delta_n: h <= delta_n / 8).
  int grid_nodes = 0;

  void validate() const;
  BubbleSumField member(int n) const;
  double delta(int n) const;  // e^(-peak/N) = (V0/C_N)^(1/N) / lambda_n
};

struct UnresolvedConcentration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MassEntry {
  Vector center;
  double radius = 0.0;
  double mass = 0.0;
  /// Mass of the bubbles at this center beyond the radius, integrated
  /// directly over (radius, inf) so it carries full relative accuracy
  /// even when it is 1e-14 of the total.  NaN for grid-backed fields.
  double tail = std::numeric_limits<double>::quiet_NaN();
};

struct MassReport {
  double lambda = 0.0;
  std::vector<MassEntry> entries;
  double total_mass = 0.0;
  double neck_mass = 0.0;
  double quantization_estimate = 0.0;  // total / (C_N kappa)
  std::string verdict;
};

/// Mass of a bubble-sum density over the Wulff ball B_radius(center):
/// radial quadrature for components centered there, 2D polar quadrature
/// for off-center components.  Includes the tail integral.
MassEntry measure_mass(const BubbleSumField& field, const Vector& center,
                       double radius, double quad_tol);

/// Generic analytic density over a Wulff ball by polar quadrature (2D).
double measure_mass_polar(const std::function<double(const Vector&)>& density,
                          const NormSpec& spec, const Vector& center,
                          double radius, double quad_tol);

/// Grid-backed mass: cell sums with partial-cell correction (straddling
/// cells are subsampled 4x4 per axis pair).  Throws if the ball exits
/// the grid.
double measure_mass(const GridField& u, const GridField& V,
                    const NormSpec& spec, const Vector& center, double radius);

/// Greedy peak detection: global maximum first, then repeated maxima of
/// u(x) + N ln(min_j F0(x - p_j)) over the found centers, stopping when
/// the shifted maximum drops below `threshold`.  Candidates closer than
/// `min_separation` to a found center are excluded.
std::vector<Vector> detect_peaks(const GridField& u, const NormSpec& spec,
                                 double threshold, double min_separation);

struct QuantizeSeries {
  std::vector<double> radii;
  std::vector<MassReport> reports;      // flattened [lambda-major]
  std::vector<double> tail_slope;       // fitted d ln(tail)/d ln(lambda), per radius
  std::vector<double> tail_slope_se;
  int fit_members = 0;                  // family members entering the fit

  const MassReport& report(int n, int radius_index) const {
    return reports[n * radii.size() + radius_index];
  }
};

/// Masses for every family member and radius, plus the fitted tail
/// exponent of |mass - m C_N kappa| against lambda (last <= 5 members).
QuantizeSeries quantize_family(const FamilyConfig& config,
                               const std::vector<double>& radii,
                               double quad_tol);

struct SupInfResult {
  std::vector<double> lambda;
  std::vector<double> max_sigma;
  std::vector<double> inf_omega;
  std::vector<double> combination;  // max_sigma + C1 * inf_omega
  double slope = 0.0;
  double slope_se = 0.0;
  double predicted_slope = 0.0;     // N - C1 N/(N-1)
  bool bounded = false;             // slope <= 0 within fit error
};

/// max_Sigma u_n + C1 inf_Omega u_n across the family, regressed on
/// ln lambda_n.
SupInfResult sup_inf_experiment(const FamilyConfig& config,
                                const Vector& sigma_lo, const Vector& sigma_hi,
                                double C1);

struct HarnackSample {
  double r = 0.0;
  double sup = 0.0;
  double inf = 0.0;
};

struct HarnackResult {
  std::vector<HarnackSample> spheres;
  double alpha = 1.0;  // fitted, in (0, 1]
  double C = 0.0;      // smallest constant for the fitted alpha
  double M = 0.0;      // sup of u + N ln F0(x - center) over the samples
  bool verified = false;
};

/// Samples u on Wulff spheres {F0(x - center) = r} (>= 360 points in 2D)
/// and fits the annulus Harnack inequality
///   sup <= alpha inf + N(alpha - 1) ln r + C.
HarnackResult annulus_harnack_experiment(
    const std::function<double(const Vector&)>& u, const Vector& center,
    const std::vector<double>& r_list, const NormSpec& spec, int N);

struct SinglenessResult {
  std::vector<double> sup_per_member;  // sup_x u_n + N ln F0(x - a1)
  double overall_sup = 0.0;
  double growth = 0.0;                 // last minus first
  bool satisfied = false;
};

/// Running supremum of u_n(x) + N ln F0(x - a1) over the family and the
/// ball B_R(a1); bounded (lambda-invariant) exactly for single-bubble
/// families centered at a1.
SinglenessResult singleness_check(const FamilyConfig& config, const Vector& a1,
                                  double R, double growth_tol = 1.0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Worker cap: min(hardware, WULFF_THREADS if set).
int worker_threads();

}  // namespace wulff
