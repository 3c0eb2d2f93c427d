#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Projection {
  Vector projection;
  Vector residual;
};

// Incrementally grown orthonormal basis for the span of a set of selected
// columns. Realizes the orthogonal projection P(S) without ever forming the
// n x n projector. New columns are orthogonalized by modified Gram-Schmidt
// with one full reorthogonalization pass; a column whose orthogonal component
// has norm <= kDependenceTol times its original norm is rejected as linearly
// dependent (the index is still recorded as selected).
class ProjectionState {
 public:
  static constexpr double kDependenceTol = 1e-10;

  explicit ProjectionState(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<int>& selected() const { return selected_; }
  int dependent_rejections() const { return dependent_rejections_; }
  bool contains(int index) const;

  /// Adds `column` under `index`. Throws on dimension mismatch or duplicate
  /// index.
  void extend(const Vector& column, int index);

  /// Copy-on-extend variant for callers that want value semantics.
  ProjectionState extended(const Vector& column, int index) const;

  /// Splits v into its component in span(basis) and the orthogonal remainder.
  Projection project(const Vector& v) const;

  /// ||P(S) v||^2 without materializing the projection.
  double projected_sq_norm(const Vector& v) const;

  /// g(S) = ||P(S) y||^2.
  double objective(const Vector& y) const { return projected_sq_norm(y); }

 private:
  Eigen::Index ambient_dim_;
  std::vector<Vector> basis_;
  std::vector<int> selected_;
  int dependent_rejections_ = 0;
};

/// ||D - D_k||_F^2 for the best rank-k approximation D_k, computed by block
/// orthogonal iteration on the Gram matrix of the smaller dimension.
/// Converges when the relative change in captured energy drops below 1e-10;
/// throws after 10,000 iterations without convergence.
double best_rank_k_error(const Matrix& D, int k);

}  // namespace sg
