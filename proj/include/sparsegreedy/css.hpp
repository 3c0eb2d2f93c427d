#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsegreedy/linalg.hpp"

namespace sg {

enum class CssMethod { greedy, psg, random };

std::string css_method_name(CssMethod m);
CssMethod css_method_from_name(const std::string& name);

struct CssTrace {
  std::vector<int> selected;           // in selection order
  std::vector<double> errors_by_step;  // Frobenius^2 residual after each pick
  long long oracle_calls = 0;
  CssMethod method = CssMethod::greedy;
  std::uint64_t seed = 0;
  bool early_stopped = false;  // every remaining column was dependent
};

/// Iterative column selection maximizing ||d_j^T E||^2 / ||(I - P(S)) d_j||^2
/// over the full column set (greedy), a progressively scheduled random subset
/// (psg), or uniformly at random (random). The residual matrix E is never
/// materialized; its Gram matrix is downdated in place per selection.
CssTrace run_css(CssMethod method, const Matrix& D, int k,
                 double epsilon = 0.1, std::uint64_t seed = 0);

/// Frobenius-squared residual of projecting every column of D onto
/// span(D_selected).
double recon_error(const Matrix& D, const std::vector<int>& selected);

}  // namespace sg
