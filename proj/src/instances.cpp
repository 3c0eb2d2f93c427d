#include "sparsegreedy/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sg {

std::vector<int> draw_support(int m, int k, SplitMix64& rng) {
  if (k < 0 || k > m) throw std::invalid_argument("draw_support: need 0 <= k <= m");
  // Partial Fisher-Yates: the first k entries are a uniform size-k subset.
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(m - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + k);
  std::sort(support.begin(), support.end());
  return support;
}

SparseInstance gen_instance(int m, int n, int k, std::uint64_t seed) {
  // n may exceed m: the sample-size rule oversamples at small k.
  if (k <= 0 || k > n || k > m)
    throw std::invalid_argument("gen_instance: need 0 < k <= min(n, m)");

  SplitMix64 rng(seed);
  SparseInstance inst;
  inst.seed = seed;
  inst.A.resize(n, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) inst.A(i, j) = scale * rng.gaussian();

  inst.support = draw_support(m, k, rng);
  inst.x = Vector::Zero(m);
  for (int idx : inst.support) inst.x(idx) = rng.gaussian();
  inst.y = inst.A * inst.x;
  return inst;
}

int sample_size_n(int k, int m, double beta) {
  if (k < 1 || m <= k) throw std::invalid_argument("sample_size_n: need m > k >= 1");
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("sample_size_n: need beta in (0,1)");
  const double arg = m / (k * std::pow(4.0 * beta, 1.0 / 6.0));
  if (arg <= 1.0)
    throw std::domain_error("sample_size_n: log argument <= 1, invalid regime");
  return static_cast<int>(std::ceil(6.0 * k * std::log(arg)));
}

CssInstance gen_css_instance(int n_rows, int m_cols, int span_size,
                             double perturbation, std::uint64_t seed) {
  if (span_size >= m_cols || span_size > n_rows || span_size < 1)
    throw std::invalid_argument(
        "gen_css_instance: need 1 <= span_size < m_cols and span_size <= n_rows");

  SplitMix64 rng(seed);
  CssInstance inst;
  inst.perturbation = perturbation;
  inst.seed = seed;
  inst.D.resize(n_rows, m_cols);
  for (int j = 0; j < m_cols; ++j)
    for (int i = 0; i < n_rows; ++i) inst.D(i, j) = rng.gaussian();

  // The planted spanning set is the last span_size columns.
  ProjectionState span(n_rows);
  for (int j = m_cols - span_size; j < m_cols; ++j) {
    inst.planted.push_back(j);
    span.extend(inst.D.col(j), j);
  }

  for (int j = 0; j < m_cols - span_size; ++j) {
    const Projection p = span.project(inst.D.col(j));
    inst.D.col(j) = p.projection + perturbation * p.residual;
  }
  for (int j = 0; j < m_cols; ++j) {
    const double norm = inst.D.col(j).norm();
    if (norm > 0.0) inst.D.col(j) /= norm;
  }
  return inst;
}

}  // namespace sg
