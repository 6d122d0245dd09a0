#pragma once

#include <vector>

#include "wulff/norm.hpp"

namespace wulff {

/// Scalar field on a uniform rectangular grid.  Node (i_0, ..., i_{d-1})
/// sits at origin + h * (i_0, ..., i_{d-1}); the first index varies
/// fastest in the flat storage.  The boundary mask marks exactly the
/// outermost node layer.
class GridField {
 public:
  GridField() = default;
  GridField(Vector origin, double h, std::vector<int> shape);

  static GridField square(double lo, double hi, int nodes_per_axis, int dim);

  int dim() const { return static_cast<int>(shape_.size()); }
  double spacing() const { return h_; }
  const Vector& origin() const { return origin_; }
  const std::vector<int>& shape() const { return shape_; }
  Eigen::Index size() const { return values_.size(); }

  Eigen::VectorXd& values() { return values_; }
  const Eigen::VectorXd& values() const { return values_; }

  bool is_boundary(Eigen::Index flat) const { return boundary_[flat] != 0; }
  const std::vector<std::uint8_t>& boundary_mask() const { return boundary_; }

  Eigen::Index stride(int axis) const { return strides_[axis]; }
  Eigen::Index flat_index(const std::vector<int>& idx) const;
  std::vector<int> multi_index(Eigen::Index flat) const;
  Vector node_position(Eigen::Index flat) const;

  /// True when every coordinate lies in [margin, n_k - 1 - margin].
  bool is_interior(Eigen::Index flat, int margin = 1) const;

  double& at(const std::vector<int>& idx) { return values_[flat_index(idx)]; }
  double at(const std::vector<int>& idx) const {
    return values_[flat_index(idx)];
  }

  /// Sample an analytic function at every node.
  template <typename F>
  void fill(F&& f) {
    for (Eigen::Index k = 0; k < values_.size(); ++k)
      values_[k] = f(node_position(k));
  }

 private:
  Vector origin_;
  double h_ = 1.0;
  std::vector<int> shape_;
  std::vector<Eigen::Index> strides_;
  Eigen::VectorXd values_;
  std::vector<std::uint8_t> boundary_;
};

}  // namespace wulff
