#include "sparsegreedy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparsegreedy/rng.hpp"

namespace sg {

ProjectionState::ProjectionState(Eigen::Index ambient_dim)
    : ambient_dim_(ambient_dim) {
  if (ambient_dim <= 0) throw std::invalid_argument("ambient_dim must be positive");
}

bool ProjectionState::contains(int index) const {
  return std::find(selected_.begin(), selected_.end(), index) != selected_.end();
}

void ProjectionState::extend(const Vector& column, int index) {
  if (column.size() != ambient_dim_)
    throw std::invalid_argument("extend: column dimension mismatch");
  if (contains(index)) throw std::invalid_argument("extend: duplicate index");

  const double original_norm = column.norm();
  Vector w = column;
  // Modified Gram-Schmidt, then one full reorthogonalization pass.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& b : basis_) w -= b.dot(w) * b;
  }
  selected_.push_back(index);
  const double residual_norm = w.norm();
  if (residual_norm <= kDependenceTol * original_norm || original_norm == 0.0) {
    ++dependent_rejections_;
    return;
  }
  basis_.push_back(w / residual_norm);
}

ProjectionState ProjectionState::extended(const Vector& column, int index) const {
  ProjectionState next(*this);
  next.extend(column, index);
  return next;
}

Projection ProjectionState::project(const Vector& v) const {
  if (v.size() != ambient_dim_)
    throw std::invalid_argument("project: dimension mismatch");
  Vector proj = Vector::Zero(ambient_dim_);
  for (const Vector& b : basis_) proj += b.dot(v) * b;
  return {proj, v - proj};
}

double ProjectionState::projected_sq_norm(const Vector& v) const {
  if (v.size() != ambient_dim_)
    throw std::invalid_argument("projected_sq_norm: dimension mismatch");
  double sq = 0.0;
  for (const Vector& b : basis_) {
    const double c = b.dot(v);
    sq += c * c;
  }
  return sq;
}

namespace {

// Orthonormalizes the columns of Q in place (modified Gram-Schmidt with
// reorthogonalization). Columns that collapse to zero are replaced by fresh
// deterministic random directions orthogonal to the rest.
void orthonormalize(Matrix& Q, SplitMix64& rng) {
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i)
        Q.col(j) -= Q.col(i).dot(Q.col(j)) * Q.col(i);
    }
    double norm = Q.col(j).norm();
    while (norm <= 1e-12) {
      for (Eigen::Index r = 0; r < Q.rows(); ++r) Q(r, j) = rng.gaussian();
      for (Eigen::Index i = 0; i < j; ++i)
        Q.col(j) -= Q.col(i).dot(Q.col(j)) * Q.col(i);
      norm = Q.col(j).norm();
    }
    Q.col(j) /= norm;
  }
}

}  // namespace

double best_rank_k_error(const Matrix& D, int k) {
  const Eigen::Index small_dim = std::min(D.rows(), D.cols());
  if (k < 1 || k > small_dim)
    throw std::invalid_argument("best_rank_k_error: k out of range");

  const double total = D.squaredNorm();
  if (k == small_dim) return 0.0;

  // Gram matrix of the smaller dimension; its eigenvalues are the squared
  // singular values of D.
  Matrix G;
  if (D.rows() <= D.cols())
    G = D * D.transpose();
  else
    G = D.transpose() * D;

  SplitMix64 rng(0x5eedULL);
  Matrix Q(small_dim, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index r = 0; r < small_dim; ++r) Q(r, c) = rng.gaussian();
  orthonormalize(Q, rng);

  constexpr int kMaxIters = 10000;
  constexpr double kRelTol = 1e-10;
  double captured = 0.0;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    Matrix Z = G * Q;
    const double new_captured = (Q.transpose() * Z).trace();
    Q = Z;
    orthonormalize(Q, rng);
    const double denom = std::max(std::abs(new_captured), std::abs(captured));
    const bool converged =
        denom == 0.0 || std::abs(new_captured - captured) <= kRelTol * denom;
    captured = new_captured;
    if (converged && iter > 0) return std::max(0.0, total - captured);
  }
  throw std::runtime_error("best_rank_k_error: no convergence after 10000 iterations");
}

}  // namespace sg
