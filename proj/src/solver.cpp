#include "wulff/solver.hpp"

#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace wulff {

void NewtonOptions::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("NewtonOptions: tol <= 0");
  if (!(damping > 0.0) || !(damping < 1.0))
    throw std::invalid_argument("NewtonOptions: damping must be in (0,1)");
  if (eps_reg < 0.0) throw std::invalid_argument("NewtonOptions: eps_reg < 0");
  if (max_iter < 1 || continuation_steps < 1)
    throw std::invalid_argument("NewtonOptions: iteration counts must be >= 1");
}

namespace {

using Triplet = Eigen::Triplet<double>;
using SparseMat = Eigen::SparseMatrix<double>;

// Regularized flux A_eps(xi) = F_eps^(N-2) * F F_xi, with F F_xi extended
// by zero at the origin.  For N = 2 this is the exact flux.
Vector flux_eps(const NormSpec& spec, int N, const Vector& xi, double eps_h) {
  const double f = eval_norm(spec, xi);
  if (f == 0.0) return Vector::Zero(xi.size());
  const double feps = std::sqrt(f * f + eps_h * eps_h);
  return std::pow(feps, N - 2) * f * eval_norm_gradient(spec, xi);
}

// d A_eps / d xi: (N-2) F_eps^(N-4) (F F_xi)(F F_xi)^T + F_eps^(N-2) H2.
Matrix flux_eps_jacobian(const NormSpec& spec, int N, const Vector& xi,
                         double eps_h) {
  const double f = eval_norm(spec, xi);
  const double feps = std::sqrt(f * f + eps_h * eps_h);
  const double floor = std::max(eps_h, 1e-14);
  Matrix J = std::pow(feps, N - 2) * norm_hessian2(spec, xi, floor);
  if (N != 2 && f > 0.0) {
    const Vector ff = f * eval_norm_gradient(spec, xi);
    J += (N - 2) * std::pow(feps, N - 4) * (ff * ff.transpose());
  }
  return J;
}

struct Problem {
  const GridField& domain;
  const NormSpec& spec;
  int N;
  const GridField& V;
  Eigen::VectorXd u;                  // full grid values, boundary fixed
  std::vector<Eigen::Index> interior; // flat indices of unknowns
  std::vector<Eigen::Index> eq_of;    // flat index -> equation id or -1
  bool with_potential = true;

  double h() const { return domain.spacing(); }

  Vector face_gradient(const Eigen::VectorXd& vals, Eigen::Index lo,
                       int axis) const {
    const int d = domain.dim();
    Vector g(d);
    const Eigen::Index hi = lo + domain.stride(axis);
    for (int b = 0; b < d; ++b) {
      if (b == axis) {
        g[b] = (vals[hi] - vals[lo]) / h();
      } else {
        const Eigen::Index sb = domain.stride(b);
        g[b] =
            (vals[lo + sb] - vals[lo - sb] + vals[hi + sb] - vals[hi - sb]) /
            (4.0 * h());
      }
    }
    return g;
  }

  // Residual G_k = -(div A_eps)_k - V_k e^(u_k) on interior nodes.
  Eigen::VectorXd residual(const Eigen::VectorXd& vals, double eps) const {
    Eigen::VectorXd G(interior.size());
    const double eps_h = eps * h();
    for (size_t e = 0; e < interior.size(); ++e) {
      const Eigen::Index k = interior[e];
      double div = 0.0;
      for (int a = 0; a < N; ++a) {
        const Eigen::Index s = domain.stride(a);
        div += (flux_eps(spec, N, face_gradient(vals, k, a), eps_h)[a] -
                flux_eps(spec, N, face_gradient(vals, k - s, a), eps_h)[a]) /
               h();
      }
      G[e] = -div;
      if (with_potential) G[e] -= V.values()[k] * std::exp(vals[k]);
    }
    return G;
  }

  SparseMat jacobian(const Eigen::VectorXd& vals, double eps) const {
    const double eps_h = eps * h();
    std::vector<Triplet> trips;
    trips.reserve(interior.size() * 9);
    for (size_t e = 0; e < interior.size(); ++e) {
      const Eigen::Index k = interior[e];
      for (int a = 0; a < N; ++a) {
        const Eigen::Index s = domain.stride(a);
        // face- contributes with sign +1/h to G, face+ with -1/h.
        for (int side = 0; side < 2; ++side) {
          const Eigen::Index lo = side == 0 ? k - s : k;
          const double sign = side == 0 ? 1.0 : -1.0;
          const Vector xi = face_gradient(vals, lo, a);
          const Matrix dA = flux_eps_jacobian(spec, N, xi, eps_h);
          const Eigen::Index hi = lo + s;
          // d xi / d u: axis component from (hi, lo), transverse from
          // the four neighbours of each face node.
          auto add = [&](Eigen::Index node, int comp, double weight) {
            const Eigen::Index col = eq_of[node];
            if (col < 0) return;  // boundary node: fixed value
            trips.emplace_back(static_cast<int>(e), static_cast<int>(col),
                               sign / h() * dA(a, comp) * weight);
          };
          add(hi, a, 1.0 / h());
          add(lo, a, -1.0 / h());
          for (int b = 0; b < N; ++b) {
            if (b == a) continue;
            const Eigen::Index sb = domain.stride(b);
            add(lo + sb, b, 1.0 / (4.0 * h()));
            add(lo - sb, b, -1.0 / (4.0 * h()));
            add(hi + sb, b, 1.0 / (4.0 * h()));
            add(hi - sb, b, -1.0 / (4.0 * h()));
          }
        }
      }
      if (with_potential)
        trips.emplace_back(static_cast<int>(e), static_cast<int>(e),
                           -V.values()[k] * std::exp(vals[k]));
    }
    SparseMat J(interior.size(), interior.size());
    J.setFromTriplets(trips.begin(), trips.end());
    return J;
  }
};

// Newton iteration at fixed eps; returns the trace, updates prob.u.
// With `best_effort` set, a stall or exhausted iteration budget returns
// the current iterate instead of throwing (used for the V = 0 stage,
// whose degenerate operator may only admit partial l_inf descent -- it
// merely seeds the full solve).
ContinuationStep newton_at_eps(Problem& prob, double eps,
                               const NewtonOptions& opts,
                               bool best_effort = false) {
  ContinuationStep step;
  step.eps = eps;
  Eigen::VectorXd G = prob.residual(prob.u, eps);
  double res = G.lpNorm<Eigen::Infinity>();
  step.residual_history.push_back(res);
  for (int it = 0; it < opts.max_iter && res > opts.tol; ++it) {
    SparseMat J = prob.jacobian(prob.u, eps);
    Eigen::SparseLU<SparseMat> lu(J);
    if (lu.info() != Eigen::Success)
      throw SingularJacobian("solve_dirichlet: sparse factorization failed");
    Eigen::VectorXd delta = lu.solve(-G);
    if (lu.info() != Eigen::Success)
      throw SingularJacobian("solve_dirichlet: sparse solve failed");

    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      Eigen::VectorXd trial = prob.u;
      for (size_t e = 0; e < prob.interior.size(); ++e)
        trial[prob.interior[e]] += alpha * delta[e];
      Eigen::VectorXd Gt = prob.residual(trial, eps);
      const double rt = Gt.lpNorm<Eigen::Infinity>();
      if (rt < (1.0 - 1e-4 * alpha) * res) {
        prob.u = std::move(trial);
        G = std::move(Gt);
        res = rt;
        accepted = true;
        break;
      }
      alpha *= opts.damping;
    }
    step.newton_iterations = it + 1;
    if (!accepted) {
      if (best_effort) break;
      throw NewtonDiverged(
          "solve_dirichlet: residual not reduced with full damping ladder",
          res, it + 1);
    }
    step.residual_history.push_back(res);
  }
  if (res > opts.tol && !best_effort)
    throw NewtonDiverged("solve_dirichlet: residual above tol after max_iter",
                         res, opts.max_iter);
  step.final_residual = res;
  return step;
}

// Transfinite (Coons) blend of the boundary data as a starting point for
// the V = 0 stage.
void transfinite_fill(const GridField& domain, Eigen::VectorXd& u) {
  const auto& shape = domain.shape();
  const int nx = shape[0], ny = shape[1];
  const Eigen::Index sx = domain.stride(0), sy = domain.stride(1);
  auto val = [&](int i, int j) { return u[i * sx + j * sy]; };
  for (int i = 1; i < nx - 1; ++i) {
    const double s = static_cast<double>(i) / (nx - 1);
    for (int j = 1; j < ny - 1; ++j) {
      const double t = static_cast<double>(j) / (ny - 1);
      const double blend =
          (1 - s) * val(0, j) + s * val(nx - 1, j) + (1 - t) * val(i, 0) +
          t * val(i, ny - 1) - (1 - s) * (1 - t) * val(0, 0) -
          s * (1 - t) * val(nx - 1, 0) - (1 - s) * t * val(0, ny - 1) -
          s * t * val(nx - 1, ny - 1);
      u[i * sx + j * sy] = blend;
    }
  }
}

}  // namespace

SolveResult solve_dirichlet(const GridField& domain, const NormSpec& spec,
                            int N, const GridField& V,
                            const BoundaryValues& boundary,
                            const NewtonOptions& opts) {
  opts.validate();
  spec.validate();
  if (N != 2 || spec.dim != 2 || domain.dim() != 2)
    throw std::invalid_argument("solve_dirichlet: 2D grids only");
  if (V.shape() != domain.shape())
    throw std::invalid_argument("solve_dirichlet: V grid mismatch");
  if (V.values().minCoeff() < 0.0)
    throw std::invalid_argument("solve_dirichlet: V must be nonnegative");
  for (int n : domain.shape())
    if (n < 3)
      throw std::invalid_argument("solve_dirichlet: grid too small");

  Problem prob{domain, spec, N, V, Eigen::VectorXd::Zero(domain.size()),
               {},     {},   true};
  prob.eq_of.assign(domain.size(), -1);
  for (Eigen::Index k = 0; k < domain.size(); ++k) {
    if (domain.is_boundary(k)) {
      const double g = boundary(domain.node_position(k));
      if (!std::isfinite(g))
        throw std::invalid_argument("solve_dirichlet: non-finite boundary");
      prob.u[k] = g;
    } else {
      prob.eq_of[k] = static_cast<Eigen::Index>(prob.interior.size());
      prob.interior.push_back(k);
    }
  }
  transfinite_fill(domain, prob.u);

  SolveResult result;
  // Stage A: V = 0 gives the N-harmonic-like extension of the data.
  // The starting point only needs modest accuracy.
  prob.with_potential = false;
  NewtonOptions stage_a = opts;
  stage_a.tol = std::max(opts.tol, 1e-6);
  stage_a.max_iter = std::min(opts.max_iter, 25);
  newton_at_eps(prob, std::max(opts.eps_start, opts.eps_reg), stage_a,
                /*best_effort=*/true);
  prob.with_potential = true;

  // Stage B: eps continuation down to eps_reg (geometric; a zero target
  // is floored for the ratio and restored on the last step).
  std::vector<double> ladder;
  const double e0 = std::max(opts.eps_start, opts.eps_reg);
  const double target = std::max(opts.eps_reg, 1e-14);
  for (int s = 0; s < opts.continuation_steps; ++s) {
    const double t = opts.continuation_steps == 1
                         ? 1.0
                         : static_cast<double>(s) / (opts.continuation_steps - 1);
    ladder.push_back(e0 * std::pow(target / e0, t));
  }
  ladder.back() = opts.eps_reg;
  Eigen::VectorXd previous = prob.u;
  for (double eps : ladder) {
    ContinuationStep step = newton_at_eps(prob, eps, opts);
    step.diff_from_previous = (prob.u - previous).lpNorm<Eigen::Infinity>();
    previous = prob.u;
    result.steps.push_back(std::move(step));
  }

  GridField u(domain.origin(), domain.spacing(), domain.shape());
  u.values() = prob.u;
  result.u = std::move(u);
  return result;
}

}  // namespace wulff
