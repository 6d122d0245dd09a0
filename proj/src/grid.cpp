#include "wulff/grid.hpp"

#include <stdexcept>

namespace wulff {

GridField::GridField(Vector origin, double h, std::vector<int> shape)
    : origin_(std::move(origin)), h_(h), shape_(std::move(shape)) {
  if (!(h_ > 0.0)) throw std::invalid_argument("GridField: spacing <= 0");
  if (shape_.empty() || origin_.size() != static_cast<Eigen::Index>(shape_.size()))
    throw std::invalid_argument("GridField: origin/shape mismatch");
  Eigen::Index total = 1;
  strides_.resize(shape_.size());
  for (size_t a = 0; a < shape_.size(); ++a) {
    if (shape_[a] < 2) throw std::invalid_argument("GridField: axis < 2 nodes");
    strides_[a] = total;
    total *= shape_[a];
  }
  values_ = Eigen::VectorXd::Zero(total);
  boundary_.assign(total, 0);
  for (Eigen::Index k = 0; k < total; ++k)
    boundary_[k] = is_interior(k, 1) ? 0 : 1;
}

GridField GridField::square(double lo, double hi, int nodes_per_axis,
                            int dim) {
  if (nodes_per_axis < 2 || hi <= lo)
    throw std::invalid_argument("GridField::square: bad extent");
  Vector origin = Vector::Constant(dim, lo);
  double h = (hi - lo) / (nodes_per_axis - 1);
  return GridField(origin, h, std::vector<int>(dim, nodes_per_axis));
}

Eigen::Index GridField::flat_index(const std::vector<int>& idx) const {
  Eigen::Index flat = 0;
  for (size_t a = 0; a < shape_.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= shape_[a])
      throw std::out_of_range("GridField: index out of range");
    flat += idx[a] * strides_[a];
  }
  return flat;
}

std::vector<int> GridField::multi_index(Eigen::Index flat) const {
  std::vector<int> idx(shape_.size());
  for (size_t a = 0; a < shape_.size(); ++a) {
    idx[a] = static_cast<int>(flat % shape_[a]);
    flat /= shape_[a];
  }
  return idx;
}

Vector GridField::node_position(Eigen::Index flat) const {
  Vector x = origin_;
  for (size_t a = 0; a < shape_.size(); ++a) {
    x[a] += h_ * static_cast<double>(flat % shape_[a]);
    flat /= shape_[a];
  }
  return x;
}

bool GridField::is_interior(Eigen::Index flat, int margin) const {
  for (size_t a = 0; a < shape_.size(); ++a) {
    const int i = static_cast<int>(flat % shape_[a]);
    if (i < margin || i > shape_[a] - 1 - margin) return false;
    flat /= shape_[a];
  }
  return true;
}

}  // namespace wulff
