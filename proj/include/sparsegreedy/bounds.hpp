#pragma once

#include <vector>

#include "sparsegreedy/linalg.hpp"

namespace sg {

// Closed-form bounds and identities used for empirical-vs-theoretical
// overlays. Values are returned unclamped unless stated; a vacuous bound is
// information, not an error.

struct PProductBound {
  double tight = 0.0;   // exp(-eps k + eps ln(1/eps)) (1 - eps^2 k + eps^2 ln(1/eps)),
                        // clamped to [0, 1]
  double simple = 0.0;  // max(0, 1 - k eps)
};

/// Lower bounds on the probability that every progressive search set hits a
/// missing support index.
PProductBound p_product_lower_bound(int k, double epsilon);

/// Upper bound on the success probability of a fixed-size restricted search
/// (requires r < m). Minimum of the averaged-product form and
/// 1 - (1 - 1/m)^r.
double restricted_upper_bound(int m, int k, int r);

/// Asymptotic lower bound prod_{n=1}^{k} (1 - e^{-alpha1 n}) for search size
/// r = alpha1 m.
double restricted_lower_bound(int k, double alpha1);

struct OracleComplexity {
  long long exact = 0;            // sum of per-iteration schedule sizes
  double harmonic_estimate = 0.0; // m ln(1/eps) (1 + H_k - H_ceil(ln(1/eps)))
};

OracleComplexity oracle_complexity(int m, int k, double epsilon);

struct QTildeBounds {
  double q1 = 0.0;
  double q2 = 0.0;
  bool vacuous = false;  // set when a value is <= 0 or the singular-value
                         // slack condition 1 - sqrt(k/n) - delta > 0 fails
};

/// Success-probability factors of the selection step, as functions of the
/// concentration parameter gamma in (0,1) and the singular-value slack
/// delta > 0.
QTildeBounds q_tilde_bounds(int n, int m, int k, double gamma, double delta);

/// (1+a)^b - e^{ab}(1 - a^2 b); nonnegative (within 1e-12) for |a| <= 1,
/// b >= 1.
double lemma_ineq_margin(double a, double b);

/// Submodularity ratio of g with respect to `reference` and parameter k,
/// computed by exhaustive enumeration (cols(A) <= 10, k <= 3). Returns
/// +infinity when every denominator is degenerate.
double submodularity_ratio(const Matrix& A, const Vector& y,
                           const std::vector<int>& reference, int k);

struct ExpectationBound {
  double eta = 0.0;
  double factor = 0.0;  // 1 - e^{-gamma} - gamma eps^eta
};

/// Expected-objective approximation factor of the randomized selector.
/// eta = 1 + max(0, s/(2m) - 1/(2(m-s))) with s = (m/k) ln(1/eps); throws
/// when s >= m.
ExpectationBound psg_expectation_bound(double gamma_ratio, double epsilon,
                                       int m, int k);

}  // namespace sg
