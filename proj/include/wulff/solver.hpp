#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "wulff/grid.hpp"
#include "wulff/norm.hpp"

namespace wulff {

struct NewtonOptions {
  /// Regularization scale: the flux coefficient magnitude uses
  /// F_eps = sqrt(F^2 + (eps h)^2) and Jacobian component clamps scale
  /// with eps h.  The operator itself is degenerate where grad u = 0;
  /// this only shapes the solve path, never the converged residual.
  double eps_reg = 1e-8;
  double tol = 1e-8;           // residual l_inf target
  int max_iter = 50;           // Newton iterations per continuation step
  double damping = 0.5;        // backtracking factor, in (0, 1)
  int continuation_steps = 4;  // eps ladder length from eps_start down
  double eps_start = 1e-2;

  void validate() const;
};

struct NewtonDiverged : std::runtime_error {
  NewtonDiverged(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual(residual), iterations(iterations) {}
  double residual;
  int iterations;
};

struct SingularJacobian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContinuationStep {
  double eps = 0.0;
  int newton_iterations = 0;
  double final_residual = 0.0;
  double diff_from_previous = 0.0;     // l_inf against previous eps solution
  std::vector<double> residual_history;  // accepted-step l_inf values
};

struct SolveResult {
  GridField u;
  std::vector<ContinuationStep> steps;
};

using BoundaryValues = std::function<double(const Vector&)>;

/// Damped Newton for the discrete Dirichlet problem -Q_N u = V e^u on the
/// rectangular grid described by `domain` (geometry only; its values are
/// ignored).  Starts from the N-harmonic-like extension obtained by first
/// solving with V = 0, then walks the eps continuation ladder.  Boundary
/// nodes carry the prescribed data exactly.  2D only.
SolveResult solve_dirichlet(const GridField& domain, const NormSpec& spec,
                            int N, const GridField& V,
                            const BoundaryValues& boundary,
                            const NewtonOptions& opts = {});

}  // namespace wulff
