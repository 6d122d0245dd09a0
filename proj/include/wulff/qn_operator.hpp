#pragma once

#include "wulff/grid.hpp"
#include "wulff/norm.hpp"

namespace wulff {

/// Discrete Q_N u = div(F^(N-1)(grad u) F_xi(grad u)) by face-centered
/// fluxes: the along-axis derivative is the two-point difference across
/// the face, transverse derivatives are the average of the centered
/// differences at the face's two nodes, and the divergence differences
/// the face fluxes.  Defined on interior nodes; boundary entries of the
/// result are zero.  The flux at a face with zero gradient is zero (the
/// continuous extension) -- no regularization here.
GridField apply_QN(const GridField& u, const NormSpec& spec, int N);

struct ResidualNorms {
  double l_inf = 0.0;
  double l1 = 0.0;             // scaled by the cell volume h^N
  Eigen::Index interior_nodes = 0;
};

/// Norms of apply_QN(u) + V e^u over nodes at least `margin` cells from
/// the boundary.
ResidualNorms residual_norms(const GridField& u, const GridField& V,
                             const NormSpec& spec, int N, int margin = 1);

/// Net outward flux through the faces bounding the interior node set,
/// divided by h.  Telescoping makes this exactly the sum of apply_QN
/// over interior nodes (discrete divergence theorem).
double boundary_flux_sum(const GridField& u, const NormSpec& spec, int N);

}  // namespace wulff
