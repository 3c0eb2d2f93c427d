#pragma once

#include <cstdint>
#include <vector>

#include "sparsegreedy/linalg.hpp"
#include "sparsegreedy/rng.hpp"

namespace sg {

// A planted noiseless sparse-recovery problem: y = A x with x supported on
// `support`. Regenerating with the same parameters and seed is bit-identical.
struct SparseInstance {
  Matrix A;                   // n x m, entries N(0, 1/n)
  Vector x;                   // m-vector, k nonzeros
  Vector y;                   // n-vector, = A x
  std::vector<int> support;   // sorted, |support| = k
  std::uint64_t seed = 0;
};

// Synthetic column-subset-selection matrix: the columns outside `planted`
// approximately lie in the span of the planted ones; every column is
// normalized to unit Euclidean norm.
struct CssInstance {
  Matrix D;                   // n_rows x m_cols, unit-norm columns
  std::vector<int> planted;   // spanning column indices (the last span_size)
  double perturbation = 0.0;
  std::uint64_t seed = 0;
};

/// Draws a uniformly random size-k subset of {0, ..., m-1}, returned sorted.
std::vector<int> draw_support(int m, int k, SplitMix64& rng);

/// Generates a noiseless instance: A ~ N(0, 1/n), support uniform over size-k
/// subsets, nonzero entries of x standard normal, y = A x.
SparseInstance gen_instance(int m, int n, int k, std::uint64_t seed);

/// Measurement count n = ceil(6 k ln(m / (k (4 beta)^{1/6}))). Natural log.
/// Throws if the log argument is <= 1 (invalid regime).
int sample_size_n(int k, int m, double beta);

/// Planted CSS matrix: Gaussian entries, the non-planted columns replaced by
/// P_L c + perturbation (I - P_L) c, then all columns normalized.
CssInstance gen_css_instance(int n_rows, int m_cols, int span_size,
                             double perturbation, std::uint64_t seed);

}  // namespace sg
