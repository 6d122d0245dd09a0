#include "wulff/norm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wulff {

NormSpec NormSpec::q_norm(double q, int dim) {
  NormSpec s;
  s.family = NormFamily::QNorm;
  s.q = q;
  s.dim = dim;
  s.validate();
  return s;
}

NormSpec NormSpec::weighted(const Vector& w) {
  NormSpec s;
  s.family = NormFamily::WeightedEuclidean;
  s.weights = w;
  s.dim = static_cast<int>(w.size());
  s.validate();
  return s;
}

void NormSpec::validate() const {
  if (dim < 2) throw std::invalid_argument("NormSpec: dim must be >= 2");
  switch (family) {
    case NormFamily::QNorm:
      if (!(q > 1.0) || !std::isfinite(q))
        throw std::invalid_argument("NormSpec: q must lie in (1, inf)");
      break;
    case NormFamily::WeightedEuclidean:
      if (weights.size() != dim)
        throw std::invalid_argument("NormSpec: weights size must equal dim");
      if (!(weights.minCoeff() > 0.0))
        throw std::invalid_argument("NormSpec: weights must be positive");
      break;
  }
}

double NormSpec::lower_comparison() const {
  // Smallest c1 with c1|xi| <= F(xi).
  if (family == NormFamily::WeightedEuclidean) return weights.minCoeff();
  // q-norm vs Euclidean: for q >= 2 the minimum over the sphere is
  // n^(1/q - 1/2); for q < 2 it is 1 (attained on an axis).
  return q >= 2.0 ? std::pow(static_cast<double>(dim), 1.0 / q - 0.5) : 1.0;
}

double NormSpec::upper_comparison() const {
  if (family == NormFamily::WeightedEuclidean) return weights.maxCoeff();
  return q >= 2.0 ? 1.0 : std::pow(static_cast<double>(dim), 1.0 / q - 0.5);
}

namespace {

void check_dim(const NormSpec& spec, const Eigen::Ref<const Vector>& v) {
  if (v.size() != spec.dim)
    throw std::invalid_argument("vector dimension does not match NormSpec");
}

}  // namespace

double eval_norm(const NormSpec& spec, const Eigen::Ref<const Vector>& xi) {
  check_dim(spec, xi);
  if (spec.family == NormFamily::WeightedEuclidean)
    return (spec.weights.array() * xi.array()).matrix().norm();
  if (spec.q == 2.0) return xi.norm();
  // Scale out the largest component so pow never over/underflows.
  const double m = xi.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (int i = 0; i < xi.size(); ++i)
    s += std::pow(std::abs(xi[i]) / m, spec.q);
  return m * std::pow(s, 1.0 / spec.q);
}

Vector eval_norm_gradient(const NormSpec& spec,
                          const Eigen::Ref<const Vector>& xi) {
  check_dim(spec, xi);
  const double f = eval_norm(spec, xi);
  if (f == 0.0)
    throw std::invalid_argument("norm gradient undefined at the origin");
  if (spec.family == NormFamily::WeightedEuclidean)
    return (spec.weights.array().square() * xi.array()).matrix() / f;
  Vector g(xi.size());
  // d/dxi_i (sum |xi_j|^q)^(1/q) = sign(xi_i) |xi_i/F|^(q-1)
  for (int i = 0; i < xi.size(); ++i) {
    const double t = std::abs(xi[i]) / f;
    g[i] = (xi[i] >= 0 ? 1.0 : -1.0) * std::pow(t, spec.q - 1.0);
    if (xi[i] == 0.0) g[i] = 0.0;
  }
  return g;
}

Vector eval_flux(const NormSpec& spec, int N,
                 const Eigen::Ref<const Vector>& xi) {
  check_dim(spec, xi);
  const double f = eval_norm(spec, xi);
  if (f == 0.0) return Vector::Zero(xi.size());
  return std::pow(f, N - 1) * eval_norm_gradient(spec, xi);
}

Matrix norm_hessian2(const NormSpec& spec, const Eigen::Ref<const Vector>& xi,
                     double component_floor) {
  check_dim(spec, xi);
  const int n = spec.dim;
  if (spec.family == NormFamily::WeightedEuclidean)
    return spec.weights.array().square().matrix().asDiagonal();
  if (spec.q == 2.0) return Matrix::Identity(n, n);

  Vector z = xi;
  for (int i = 0; i < n; ++i)
    if (std::abs(z[i]) < component_floor)
      z[i] = (z[i] >= 0 ? component_floor : -component_floor);
  const double f = eval_norm(spec, z);
  if (f == 0.0)
    throw std::invalid_argument("norm_hessian2 undefined at the origin");
  // H2 = (2-q) S^(2/q-2) a a^T + (q-1) S^(2/q-1) diag(|xi_i|^(q-2)),
  // a_i = sign(xi_i)|xi_i|^(q-1), S = sum |xi_i|^q; scaled by f to keep
  // the powers stable.
  const double q = spec.q;
  Vector t = (z / f).cwiseAbs();
  double S = 0.0;
  Vector a(n);
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    S += std::pow(t[i], q);
    a[i] = (z[i] >= 0 ? 1.0 : -1.0) * std::pow(t[i], q - 1.0);
    d[i] = t[i] > 0.0 ? std::pow(t[i], q - 2.0)
                      : (q > 2.0 ? 0.0 : std::numeric_limits<double>::infinity());
  }
  Matrix H = (2.0 - q) * std::pow(S, 2.0 / q - 2.0) * (a * a.transpose());
  H += ((q - 1.0) * std::pow(S, 2.0 / q - 1.0)) * d.asDiagonal().toDenseMatrix();
  return H;
}

double dual_norm(const NormSpec& spec, const Eigen::Ref<const Vector>& x) {
  check_dim(spec, x);
  if (spec.family == NormFamily::WeightedEuclidean)
    return (x.array() / spec.weights.array()).matrix().norm();
  NormSpec dual = spec;
  dual.q = spec.q / (spec.q - 1.0);
  return eval_norm(dual, x);
}

Vector dual_norm_gradient(const NormSpec& spec,
                          const Eigen::Ref<const Vector>& x) {
  check_dim(spec, x);
  if (spec.family == NormFamily::WeightedEuclidean) {
    const double f0 = dual_norm(spec, x);
    if (f0 == 0.0)
      throw std::invalid_argument("dual norm gradient undefined at origin");
    return (x.array() / spec.weights.array().square()).matrix() / f0;
  }
  NormSpec dual = spec;
  dual.q = spec.q / (spec.q - 1.0);
  return eval_norm_gradient(dual, x);
}

AscentResult dual_norm_ascent(const NormSpec& spec,
                              const Eigen::Ref<const Vector>& x, double tol,
                              int max_iter) {
  check_dim(spec, x);
  if (tol <= 0.0) throw std::invalid_argument("dual_norm_ascent: tol <= 0");
  AscentResult res;
  const double xnorm = x.norm();
  if (xnorm == 0.0) {
    res.maximizer = Vector::Zero(spec.dim);
    return res;
  }

  // Maximize h(eta) = <x, eta> / F(eta); h is 0-homogeneous so its
  // gradient is tangent to rays and plain ascent stays well-scaled once
  // eta is renormalized to the F-sphere each step.
  Vector eta = x / eval_norm(spec, x);
  double h = x.dot(eta);
  double step = 1.0 / xnorm;
  int it = 0;
  for (; it < max_iter; ++it) {
    const Vector grad = x - h * eval_norm_gradient(spec, eta);
    const double gnorm = grad.norm();
    if (gnorm <= 1e-3 * tol * xnorm) break;
    double alpha = step;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vector trial = eta + alpha * grad;
      const double fn = eval_norm(spec, trial);
      if (fn > 0.0) {
        trial /= fn;
        const double ht = x.dot(trial);
        if (ht > h + 0.25 * alpha * gnorm * gnorm) {
          eta = trial;
          h = ht;
          step = 2.0 * alpha;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // progress below rounding; h is converged
  }
  // Value error is quadratic in the remaining gradient, so the loose
  // gradient stop above still delivers `tol` on the value.
  const Vector grad = x - h * eval_norm_gradient(spec, eta);
  if (grad.norm() > tol * xnorm * 10.0 && it >= max_iter)
    throw std::runtime_error("dual_norm_ascent: no convergence within cap");
  res.value = h;
  res.maximizer = eta;
  res.iterations = it;
  return res;
}

std::string describe(const NormSpec& spec) {
  std::ostringstream os;
  if (spec.family == NormFamily::QNorm)
    os << "q_norm(q=" << spec.q << ", dim=" << spec.dim << ")";
  else {
    os << "weighted_euclidean([";
    for (int i = 0; i < spec.weights.size(); ++i)
      os << (i ? "," : "") << spec.weights[i];
    os << "], dim=" << spec.dim << ")";
  }
  return os.str();
}

}  // namespace wulff
