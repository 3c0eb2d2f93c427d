#include "sparsegreedy/css.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sparsegreedy/rng.hpp"
#include "sparsegreedy/select.hpp"

namespace sg {

std::string css_method_name(CssMethod m) {
  switch (m) {
    case CssMethod::greedy: return "greedy";
    case CssMethod::psg: return "psg";
    case CssMethod::random: return "random";
  }
  return "?";
}

CssMethod css_method_from_name(const std::string& name) {
  if (name == "greedy") return CssMethod::greedy;
  if (name == "psg") return CssMethod::psg;
  if (name == "random") return CssMethod::random;
  throw std::invalid_argument("unknown css method: " + name);
}

CssTrace run_css(CssMethod method, const Matrix& D, int k, double epsilon,
                 std::uint64_t seed) {
  const int m = static_cast<int>(D.cols());
  if (k < 1 || k > m) throw std::invalid_argument("run_css: need 1 <= k <= cols");
  if (method == CssMethod::psg && (epsilon <= 0.0 || epsilon >= 1.0))
    throw std::invalid_argument("run_css: need epsilon in (0,1)");

  // Gram matrix of the residualized columns. Selecting column j adds basis
  // vector b = r_j / ||r_j||, giving w = R^T b = G_j / sqrt(G_jj) and the
  // rank-one downdate G <- G - w w^T; the selection gain ||G_j||^2 / G_jj
  // equals the Frobenius error reduction.
  Matrix G = D.transpose() * D;
  const Vector orig_diag = G.diagonal();
  double err = G.trace();

  CssTrace trace;
  trace.method = method;
  trace.seed = seed;
  SplitMix64 rng(seed);

  std::vector<char> is_selected(m, 0);
  auto degenerate = [&](int j) {
    return G(j, j) <= 1e-10 * orig_diag(j);
  };
  auto gain_of = [&](int j) { return G.col(j).squaredNorm() / G(j, j); };

  for (int i = 0; i < k; ++i) {
    int pick = -1;
    double pick_gain = 0.0;

    auto scan = [&](const std::vector<int>& candidates) {
      for (int j : candidates) {
        if (is_selected[j] || degenerate(j)) continue;
        const double gain = gain_of(j);
        if (pick < 0 || gain > pick_gain) {
          pick = j;
          pick_gain = gain;
        }
      }
    };

    if (method == CssMethod::greedy) {
      std::vector<int> all(m);
      std::iota(all.begin(), all.end(), 0);
      scan(all);
      trace.oracle_calls += m - i;
      if (pick < 0) {
        trace.early_stopped = true;
        break;
      }
    } else if (method == CssMethod::psg) {
      const int r = schedule_size(i, k, m, epsilon);
      for (int attempt = 0; attempt < 2 && pick < 0; ++attempt) {
        scan(draw_search_set(m, r, false, rng));
        trace.oracle_calls += r;
      }
      if (pick < 0) {
        // Two empty draws; decide from the full set whether anything usable
        // remains at all.
        std::vector<int> all(m);
        std::iota(all.begin(), all.end(), 0);
        scan(all);
        trace.oracle_calls += m - i;
        if (pick < 0) {
          trace.early_stopped = true;
          break;
        }
      }
    } else {  // random: uniform over unselected columns, dependent or not
      int remaining = m - i;
      int target = static_cast<int>(rng.uniform_below(remaining));
      for (int j = 0; j < m; ++j) {
        if (is_selected[j]) continue;
        if (target-- == 0) {
          pick = j;
          break;
        }
      }
      pick_gain = degenerate(pick) ? 0.0 : gain_of(pick);
    }

    is_selected[pick] = 1;
    trace.selected.push_back(pick);
    if (!degenerate(pick)) {
      const Vector w = G.col(pick) / std::sqrt(G(pick, pick));
      G.noalias() -= w * w.transpose();
      err -= pick_gain;
    }
    trace.errors_by_step.push_back(std::max(0.0, err));
  }
  return trace;
}

double recon_error(const Matrix& D, const std::vector<int>& selected) {
  ProjectionState state(D.rows());
  for (int j : selected) {
    if (j < 0 || j >= D.cols()) throw std::invalid_argument("recon_error: bad index");
    state.extend(D.col(j), j);
  }
  double captured = 0.0;
  for (const Vector& b : state.basis()) captured += (D.transpose() * b).squaredNorm();
  return std::max(0.0, D.squaredNorm() - captured);
}

}  // namespace sg
