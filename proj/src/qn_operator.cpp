#include "wulff/qn_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace wulff {

namespace {

// Gradient at the face between nodes lo and lo + stride(axis).
Vector face_gradient(const GridField& u, Eigen::Index lo, int axis) {
  const int d = u.dim();
  const double h = u.spacing();
  const Eigen::Index hi = lo + u.stride(axis);
  const Eigen::VectorXd& v = u.values();
  Vector g(d);
  for (int b = 0; b < d; ++b) {
    if (b == axis) {
      g[b] = (v[hi] - v[lo]) / h;
    } else {
      const Eigen::Index sb = u.stride(b);
      g[b] = (v[lo + sb] - v[lo - sb] + v[hi + sb] - v[hi - sb]) / (4.0 * h);
    }
  }
  return g;
}

void check_operator_args(const GridField& u, const NormSpec& spec, int N) {
  spec.validate();
  if (N != spec.dim || N != u.dim())
    throw std::invalid_argument("apply_QN: N, spec.dim and grid dim differ");
  for (int n : u.shape())
    if (n < 3) throw std::invalid_argument("apply_QN: grid needs >= 3 nodes per axis");
}

}  // namespace

GridField apply_QN(const GridField& u, const NormSpec& spec, int N) {
  check_operator_args(u, spec, N);
  GridField out(u.origin(), u.spacing(), u.shape());
  const double h = u.spacing();
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (!u.is_interior(k)) continue;
    double div = 0.0;
    for (int a = 0; a < N; ++a) {
      const Eigen::Index s = u.stride(a);
      const Vector flux_plus = eval_flux(spec, N, face_gradient(u, k, a));
      const Vector flux_minus = eval_flux(spec, N, face_gradient(u, k - s, a));
      div += (flux_plus[a] - flux_minus[a]) / h;
    }
    out.values()[k] = div;
  }
  return out;
}

ResidualNorms residual_norms(const GridField& u, const GridField& V,
                             const NormSpec& spec, int N, int margin) {
  if (margin < 1) throw std::invalid_argument("residual_norms: margin < 1");
  if (u.shape() != V.shape())
    throw std::invalid_argument("residual_norms: u and V grids differ");
  const GridField qn = apply_QN(u, spec, N);
  ResidualNorms out;
  const double cell = std::pow(u.spacing(), N);
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (!u.is_interior(k, margin)) continue;
    const double r = qn.values()[k] + V.values()[k] * std::exp(u.values()[k]);
    out.l_inf = std::max(out.l_inf, std::abs(r));
    out.l1 += cell * std::abs(r);
    ++out.interior_nodes;
  }
  if (out.interior_nodes == 0)
    throw std::invalid_argument("residual_norms: margin leaves no interior");
  return out;
}

double boundary_flux_sum(const GridField& u, const NormSpec& spec, int N) {
  check_operator_args(u, spec, N);
  const double h = u.spacing();
  double net = 0.0;
  // For each axis, walk every grid line and take the outermost interior
  // faces: between (0,1) and between (n-2, n-1) along that axis.
  for (int a = 0; a < N; ++a) {
    const Eigen::Index s = u.stride(a);
    const int n_a = u.shape()[a];
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      const auto idx = u.multi_index(k);
      if (idx[a] != 0) continue;  // k is the line's start
      bool transverse_interior = true;
      for (int b = 0; b < N; ++b)
        if (b != a && (idx[b] < 1 || idx[b] > u.shape()[b] - 2))
          transverse_interior = false;
      if (!transverse_interior) continue;
      const Vector first = eval_flux(spec, N, face_gradient(u, k, a));
      const Vector last =
          eval_flux(spec, N, face_gradient(u, k + (n_a - 2) * s, a));
      net += (last[a] - first[a]) / h;
    }
  }
  return net;
}

}  // namespace wulff
