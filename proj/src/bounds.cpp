#include "sparsegreedy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "sparsegreedy/select.hpp"

namespace sg {

PProductBound p_product_lower_bound(int k, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("p_product_lower_bound: need epsilon in (0,1)");
  const double L = std::log(1.0 / epsilon);
  PProductBound b;
  const double tight =
      std::exp(-epsilon * k + epsilon * L) *
      (1.0 - epsilon * epsilon * k + epsilon * epsilon * L);
  b.tight = std::clamp(tight, 0.0, 1.0);
  b.simple = std::max(0.0, 1.0 - k * epsilon);
  return b;
}

double restricted_upper_bound(int m, int k, int r) {
  if (r < 1 || r >= m)
    throw std::invalid_argument("restricted_upper_bound: need 1 <= r < m (use 1 for r >= m)");
  const int ell = std::min<long long>(
      k, static_cast<long long>(std::floor(std::sqrt(
             static_cast<double>(m) * m / static_cast<double>(r)))));
  const int i_min = k - ell;
  double sum = 0.0;
  for (int i = i_min; i < k; ++i) {
    const double d = static_cast<double>(k - i);
    const double term = std::exp(-r * d / m) * (1.0 - r * d * d / (static_cast<double>(m) * m));
    sum += std::max(0.0, term);
  }
  const double a = std::pow(1.0 - sum / ell, ell);
  const double b = 1.0 - std::pow(1.0 - 1.0 / m, r);
  return std::min(a, b);
}

double restricted_lower_bound(int k, double alpha1) {
  if (alpha1 <= 0.0 || alpha1 >= 1.0)
    throw std::invalid_argument("restricted_lower_bound: need alpha1 in (0,1)");
  if (k < 1) throw std::invalid_argument("restricted_lower_bound: need k >= 1");
  double product = 1.0;
  for (int n = 1; n <= k; ++n) product *= 1.0 - std::exp(-alpha1 * n);
  return product;
}

OracleComplexity oracle_complexity(int m, int k, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("oracle_complexity: need epsilon in (0,1)");
  OracleComplexity oc;
  for (int i = 0; i < k; ++i) oc.exact += schedule_size(i, k, m, epsilon);

  const double L = std::log(1.0 / epsilon);
  const int L_int = static_cast<int>(std::ceil(L));
  auto harmonic = [](int x) {
    double h = 0.0;
    for (int i = 1; i <= x; ++i) h += 1.0 / i;
    return h;
  };
  oc.harmonic_estimate = m * L * (1.0 + harmonic(k) - harmonic(L_int));
  return oc;
}

QTildeBounds q_tilde_bounds(int n, int m, int k, double gamma, double delta) {
  if (gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument("q_tilde_bounds: need gamma in (0,1)");
  if (delta <= 0.0) throw std::invalid_argument("q_tilde_bounds: need delta > 0");
  if (k >= n) throw std::invalid_argument("q_tilde_bounds: need k < n");

  QTildeBounds q;
  const double c0 = gamma * gamma / 4.0 - gamma * gamma * gamma / 6.0;
  q.q1 = std::pow(1.0 - 2.0 * std::exp(-n * c0), m) -
         std::exp(-delta * delta * n / 2.0);

  const double slack = 1.0 - std::sqrt(static_cast<double>(k) / n) - delta;
  const double exponent_arg = (1.0 - gamma) / (1.0 + gamma) * slack * slack *
                              n / (2.0 * k);
  q.q2 = std::pow(1.0 - std::exp(-exponent_arg),
                  static_cast<double>(k) * (m - k));
  q.vacuous = slack <= 0.0 || q.q1 <= 0.0 || q.q2 <= 0.0;
  return q;
}

double lemma_ineq_margin(double a, double b) {
  if (std::abs(a) > 1.0 || b < 1.0)
    throw std::invalid_argument("lemma_ineq_margin: need |a| <= 1 and b >= 1");
  return std::pow(1.0 + a, b) - std::exp(a * b) * (1.0 - a * a * b);
}

namespace {

double memoized_g(const Matrix& A, const Vector& y, unsigned mask,
                  std::unordered_map<unsigned, double>& cache) {
  auto it = cache.find(mask);
  if (it != cache.end()) return it->second;
  ProjectionState state(A.rows());
  for (int j = 0; j < static_cast<int>(A.cols()); ++j)
    if (mask & (1u << j)) state.extend(A.col(j), j);
  const double g = state.objective(y);
  cache.emplace(mask, g);
  return g;
}

}  // namespace

double submodularity_ratio(const Matrix& A, const Vector& y,
                           const std::vector<int>& reference, int k) {
  const int m = static_cast<int>(A.cols());
  if (m > 10 || k > 3 || k < 1)
    throw std::invalid_argument("submodularity_ratio: enumeration limited to m <= 10, k <= 3");

  unsigned ref_mask = 0;
  for (int j : reference) {
    if (j < 0 || j >= m) throw std::invalid_argument("submodularity_ratio: bad reference index");
    ref_mask |= 1u << j;
  }

  std::unordered_map<unsigned, double> cache;
  double ratio = std::numeric_limits<double>::infinity();
  constexpr double kDenomTol = 1e-12;

  // L ranges over subsets of the reference set.
  for (unsigned L = 0;; L = (L - ref_mask) & ref_mask) {
    const double gL = memoized_g(A, y, L, cache);
    // S ranges over subsets of the complement of L, |S| in [1, k].
    const unsigned comp = (~L) & ((1u << m) - 1);
    for (unsigned S = comp; S != 0; S = (S - 1) & comp) {
      if (__builtin_popcount(S) > k) continue;
      const double denom = memoized_g(A, y, L | S, cache) - gL;
      if (denom <= kDenomTol) continue;  // 0/0 convention: skip
      double numer = 0.0;
      for (int j = 0; j < m; ++j)
        if (S & (1u << j)) numer += memoized_g(A, y, L | (1u << j), cache) - gL;
      ratio = std::min(ratio, numer / denom);
    }
    if (L == ref_mask) break;
  }
  return ratio;
}

ExpectationBound psg_expectation_bound(double gamma_ratio, double epsilon,
                                       int m, int k) {
  if (gamma_ratio <= 0.0)
    throw std::invalid_argument("psg_expectation_bound: need gamma > 0");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("psg_expectation_bound: need epsilon in (0,1)");
  const double s = static_cast<double>(m) / k * std::log(1.0 / epsilon);
  if (s >= m)
    throw std::domain_error("psg_expectation_bound: s >= m, eta undefined");
  ExpectationBound b;
  b.eta = 1.0 + std::max(0.0, s / (2.0 * m) - 1.0 / (2.0 * (m - s)));
  b.factor = 1.0 - std::exp(-gamma_ratio) -
             gamma_ratio * std::pow(epsilon, b.eta);
  return b;
}

}  // namespace sg
