#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsegreedy/linalg.hpp"

namespace sg {

enum class ExperimentKind { recovery_sweep, restricted_sweep, css_sweep };
enum class RRule { fixed, m_over_sqrt_k, m_over_2, alpha_m };
enum class MRule { two_k_pow_three_halves, explicit_m };
enum class NRule { sample_size, explicit_n };

// Declarative Monte Carlo sweep. Parsed from a JSON file; unknown keys are
// rejected.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::recovery_sweep;
  std::vector<int> k_values;
  std::vector<double> beta_values;     // recovery sweeps; also sets n for
                                       // restricted sweeps (first entry)
  std::vector<double> epsilon_values;  // css psg variants
  RRule r_rule = RRule::m_over_2;
  int r_fixed = 0;
  double alpha1 = 0.5;
  int trials = 200;
  std::uint64_t master_seed = 1;
  MRule m_rule = MRule::two_k_pow_three_halves;
  int m_explicit = 0;
  NRule n_rule = NRule::sample_size;
  int n_explicit = 0;
  bool replacement = false;
  // css-sweep geometry
  int n_rows = 200;
  int m_cols = 1000;
  int span_size = 20;
  double perturbation = 0.1;
  std::string out;  // optional; CLI --out overrides
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// One plotted point. Optional fields print as empty CSV cells.
struct ResultRow {
  std::string experiment;
  int k = 0;
  int m = 0;
  int n = 0;
  std::string method;
  std::optional<double> parameter;  // epsilon or r
  int trials = 0;
  std::optional<int> successes;
  std::optional<double> success_rate;
  std::optional<double> mean_oracle_calls;
  std::optional<double> mean_error;
  std::optional<double> theory_lower;
  std::optional<double> theory_upper;
  std::optional<double> svd_baseline;
  int error_trials = 0;
  std::optional<double> wall_seconds;
};

struct RunOptions {
  int workers = 1;
  bool include_timings = false;  // wall_seconds breaks byte-identical reruns,
                                 // so it is opt-in
};

std::vector<ResultRow> run_mc_recovery(const ExperimentConfig& config,
                                       const RunOptions& opts = {});
std::vector<ResultRow> run_mc_restricted(const ExperimentConfig& config,
                                         const RunOptions& opts = {});
std::vector<ResultRow> run_css_experiment(const ExperimentConfig& config,
                                          const RunOptions& opts = {});

/// Dispatches on config.kind.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const RunOptions& opts = {});

/// Fixed column set, header row always present.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// Minimal line-chart SVG: one series per (method, parameter), x = k,
/// y = success_rate (or mean_error for css rows). Rates of zero are floored
/// at 1e-10 only when log_y is set.
std::string rows_to_svg(const std::vector<ResultRow>& rows, bool log_y);
void write_svg(const std::vector<ResultRow>& rows, const std::string& path,
               bool log_y);

/// Plain-text matrix file: first line "rows cols", then row-major values.
Matrix read_matrix_file(const std::string& path);

}  // namespace sg
