// Test-only reference implementations, kept independent of the library's
// incremental-basis code path.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sparsegreedy/linalg.hpp"

namespace sg_test {

/// g(S) via the explicit pseudo-inverse: ||A_S (A_S^T A_S)^{-1} A_S^T y||^2.
inline double objective_pinv(const sg::Matrix& A, const sg::Vector& y,
                             const std::vector<int>& subset) {
  if (subset.empty()) return 0.0;
  sg::Matrix As(A.rows(), subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) As.col(i) = A.col(subset[i]);
  const sg::Matrix gram = As.transpose() * As;
  const sg::Vector coeffs = gram.ldlt().solve(As.transpose() * y);
  return (As * coeffs).squaredNorm();
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(sg::Matrix S) {
  const int n = static_cast<int>(S.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += S(p, q) * S(p, q);
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(S(p, q)) < 1e-18) continue;
        const double theta = (S(q, q) - S(p, p)) / (2.0 * S(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::JacobiRotation<double> rot(c, s);
        S.applyOnTheLeft(p, q, rot.transpose());
        S.applyOnTheRight(p, q, rot);
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = S(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

}  // namespace sg_test
