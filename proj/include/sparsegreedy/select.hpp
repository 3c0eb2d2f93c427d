#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsegreedy/linalg.hpp"
#include "sparsegreedy/rng.hpp"

namespace sg {

enum class Method { omp, ols, psg, restricted };
enum class Criterion { omp, ols };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Search-set size for iteration i of the progressive schedule:
/// min(ceil((m/(k-i)) ln(1/eps)), m) while i < k - ln(1/eps), else m.
int schedule_size(int i, int k, int m, double epsilon);

struct Schedule {
  int m = 0;
  int k = 0;
  double epsilon = 0.0;
  std::vector<int> per_iteration_sizes;
};

Schedule make_schedule(int k, int m, double epsilon);

struct SelectionTrace {
  std::vector<int> selected;                 // in selection order
  std::vector<double> gains;                 // criterion value of each winner
  std::vector<std::vector<int>> search_sets; // deduplicated sets evaluated
  long long oracle_calls = 0;                // counts duplicates when sampling
                                             // with replacement
  Method method = Method::omp;
  std::uint64_t seed = 0;
  bool early_stopped = false;
  bool failed = false;  // degenerate draw could not be recovered by a redraw
};

/// Uniform random search set over {0,...,m-1}, returned sorted. Without
/// replacement the set has exactly r distinct indices; with replacement the
/// result is the deduplicated multiset of r draws.
std::vector<int> draw_search_set(int m, int r, bool replacement, SplitMix64& rng);

struct StepResult {
  int index = -1;
  double gain = 0.0;
};

/// Argmax of the OMP/OLS criterion over search \ selected; ties broken by
/// lowest index. Throws if every search index is already selected.
StepResult select_step(Criterion criterion, const Matrix& A,
                       const Vector& residual, const ProjectionState& state,
                       const std::vector<int>& search);

struct SelectorOptions {
  double epsilon = 0.1;       // psg only
  int r = 0;                  // restricted only
  bool replacement = false;
  std::uint64_t seed = 0;
  bool quiet = false;         // suppress the epsilon-clamp warning
};

/// Runs k iterations of the requested selector and records the trace.
/// Stops early when the residual norm drops below 1e-10 ||y||.
SelectionTrace run_selector(Method method, const Matrix& A, const Vector& y,
                            int k, const SelectorOptions& opts = {});

/// Exhaustive maximization of g(S) over all size-k subsets; lexicographic
/// tie-break. Guarded by C(m, k) <= 1e6.
std::vector<int> brute_force_support(const Matrix& A, const Vector& y, int k);

/// Order-insensitive support match, the success indicator of the harness.
bool same_support(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace sg
