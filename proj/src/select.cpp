#include "sparsegreedy/select.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sg {

std::string method_name(Method m) {
  switch (m) {
    case Method::omp: return "omp";
    case Method::ols: return "ols";
    case Method::psg: return "psg";
    case Method::restricted: return "restricted";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "omp") return Method::omp;
  if (name == "ols") return Method::ols;
  if (name == "psg") return Method::psg;
  if (name == "restricted") return Method::restricted;
  throw std::invalid_argument("unknown method: " + name);
}

int schedule_size(int i, int k, int m, double epsilon) {
  if (i < 0 || i >= k) throw std::invalid_argument("schedule_size: need 0 <= i < k");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("schedule_size: need epsilon in (0,1)");
  const double log_inv_eps = std::log(1.0 / epsilon);
  if (static_cast<double>(i) >= static_cast<double>(k) - log_inv_eps) return m;
  const double r = std::ceil(m / static_cast<double>(k - i) * log_inv_eps);
  return std::min(m, static_cast<int>(r));
}

Schedule make_schedule(int k, int m, double epsilon) {
  Schedule s;
  s.m = m;
  s.k = k;
  s.epsilon = epsilon;
  s.per_iteration_sizes.reserve(k);
  for (int i = 0; i < k; ++i)
    s.per_iteration_sizes.push_back(schedule_size(i, k, m, epsilon));
  return s;
}

std::vector<int> draw_search_set(int m, int r, bool replacement,
                                 SplitMix64& rng) {
  if (r < 1 || r > m) throw std::invalid_argument("draw_search_set: need 1 <= r <= m");
  if (replacement) {
    std::set<int> drawn;
    for (int i = 0; i < r; ++i)
      drawn.insert(static_cast<int>(rng.uniform_below(m)));
    return std::vector<int>(drawn.begin(), drawn.end());
  }
  if (r == m) {
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < r; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(m - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + r);
  std::sort(out.begin(), out.end());
  return out;
}

StepResult select_step(Criterion criterion, const Matrix& A,
                       const Vector& residual, const ProjectionState& state,
                       const std::vector<int>& search) {
  if (search.empty()) throw std::invalid_argument("select_step: empty search set");
  StepResult best;
  bool found = false;
  for (int j : search) {
    if (state.contains(j)) continue;
    const auto col = A.col(j);
    const double numer = std::abs(col.dot(residual));
    double denom;
    if (criterion == Criterion::omp) {
      denom = col.norm();
    } else {
      const double orth_sq = col.squaredNorm() - state.projected_sq_norm(col);
      if (orth_sq <= ProjectionState::kDependenceTol) continue;  // in span already
      denom = std::sqrt(orth_sq);
    }
    if (denom <= 0.0) continue;
    const double gain = numer / denom;
    // Strict > plus an ascending scan gives the lowest-index tie-break.
    if (!found || gain > best.gain) {
      best.index = j;
      best.gain = gain;
      found = true;
    }
  }
  if (!found)
    throw std::runtime_error("select_step: restricted search exhausted");
  return best;
}

SelectionTrace run_selector(Method method, const Matrix& A, const Vector& y,
                            int k, const SelectorOptions& opts) {
  const int m = static_cast<int>(A.cols());
  const int n = static_cast<int>(A.rows());
  if (k < 1 || k > n) throw std::invalid_argument("run_selector: need 1 <= k <= n");
  if (y.size() != n) throw std::invalid_argument("run_selector: y dimension mismatch");

  double epsilon = opts.epsilon;
  if (method == Method::psg) {
    const double lo = std::exp(-static_cast<double>(k));
    const double hi = std::exp(-static_cast<double>(k) / m);
    if (epsilon < lo || epsilon > hi) {
      if (!opts.quiet)
        std::cerr << "warning: epsilon " << epsilon << " outside [e^-k, e^-k/m], clamping\n";
      epsilon = std::clamp(epsilon, lo, hi);
    }
  }
  if (method == Method::restricted && (opts.r < 1 || opts.r > m))
    throw std::invalid_argument("run_selector: restricted needs 1 <= r <= m");

  SelectionTrace trace;
  trace.method = method;
  trace.seed = opts.seed;
  const Criterion criterion =
      method == Method::ols ? Criterion::ols : Criterion::omp;

  SplitMix64 rng(opts.seed);
  ProjectionState state(n);
  Vector residual = y;
  const double y_norm = y.norm();

  std::vector<int> full(m);
  std::iota(full.begin(), full.end(), 0);

  for (int i = 0; i < k; ++i) {
    if (residual.norm() < 1e-10 * y_norm) {
      trace.early_stopped = true;
      break;
    }

    std::vector<int> search;
    long long drawn = 0;
    auto draw = [&](int r) {
      search = draw_search_set(m, r, opts.replacement, rng);
      drawn += r;
    };
    switch (method) {
      case Method::omp:
      case Method::ols:
        search = full;
        drawn = m;
        break;
      case Method::psg:
        draw(schedule_size(i, k, m, epsilon));
        break;
      case Method::restricted:
        draw(opts.r);
        break;
    }

    auto usable = [&] {
      return std::any_of(search.begin(), search.end(),
                         [&](int j) { return !state.contains(j); });
    };
    if (!usable() && (method == Method::psg || method == Method::restricted)) {
      // One redraw, then give up; the run must terminate.
      draw(method == Method::psg ? schedule_size(i, k, m, epsilon) : opts.r);
      if (!usable()) {
        trace.oracle_calls += drawn;
        trace.failed = true;
        break;
      }
    }

    const StepResult step = select_step(criterion, A, residual, state, search);
    const std::size_t basis_before = state.basis().size();
    state.extend(A.col(step.index), step.index);
    // Incremental residual update against the basis vector added this step;
    // skipped when the winning column was rejected as dependent.
    if (state.basis().size() > basis_before) {
      const Vector& b = state.basis().back();
      residual -= b.dot(residual) * b;
    }

    trace.selected.push_back(step.index);
    trace.gains.push_back(step.gain);
    trace.search_sets.push_back(std::move(search));
    trace.oracle_calls += drawn;
  }
  return trace;
}

namespace {

long long binomial_guarded(int m, int k, long long cap) {
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (m - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

std::vector<int> brute_force_support(const Matrix& A, const Vector& y, int k) {
  const int m = static_cast<int>(A.cols());
  const int n = static_cast<int>(A.rows());
  if (k < 1 || k > m) throw std::invalid_argument("brute_force_support: k out of range");
  if (binomial_guarded(m, k, 1000000) > 1000000)
    throw std::invalid_argument("brute_force_support: C(m,k) exceeds 1e6");

  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  std::vector<int> best;
  double best_g = -1.0;

  for (;;) {
    ProjectionState state(n);
    for (int j : subset) state.extend(A.col(j), j);
    const double g = state.objective(y);
    // Strict improvement keeps the lexicographically first maximizer.
    if (g > best_g) {
      best = subset;
      best_g = g;
    }
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && subset[i] == m - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return best;
}

bool same_support(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

}  // namespace sg
