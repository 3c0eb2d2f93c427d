// Command-line front end: single-instance recovery, Monte Carlo sweeps,
// theory-bound evaluation, and column subset selection.
//
// Exit codes: 0 success, 2 invalid config/flags, 3 runtime failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsegreedy/bounds.hpp"
#include "sparsegreedy/css.hpp"
#include "sparsegreedy/experiments.hpp"
#include "sparsegreedy/instances.hpp"
#include "sparsegreedy/select.hpp"

namespace {

using nlohmann::json;

int cmd_recover(int m, int n, int k, const std::string& method_str,
                double eps, int r, std::uint64_t seed, bool replacement) {
  const sg::Method method = sg::method_from_name(method_str);
  const sg::SparseInstance inst = sg::gen_instance(m, n, k, seed);
  sg::SelectorOptions opts;
  opts.epsilon = eps;
  opts.r = r;
  opts.replacement = replacement;
  opts.seed = sg::derive_stream(seed, 1);
  const sg::SelectionTrace trace = sg::run_selector(method, inst.A, inst.y, k, opts);

  json out;
  out["method"] = sg::method_name(method);
  out["m"] = m;
  out["n"] = n;
  out["k"] = k;
  out["seed"] = seed;
  out["selected"] = trace.selected;
  out["true_support"] = inst.support;
  out["success"] = !trace.failed && sg::same_support(trace.selected, inst.support);
  out["oracle_calls"] = trace.oracle_calls;
  out["gains"] = trace.gains;
  out["early_stopped"] = trace.early_stopped;
  out["failed"] = trace.failed;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_bounds(int m, int n, int k, double eps, double beta, double gamma,
               double delta, int r, double alpha1) {
  json out;
  out["m"] = m;
  out["n"] = n;
  out["k"] = k;

  const auto pp = sg::p_product_lower_bound(k, eps);
  out["p_product_lower_bound"] = {{"tight", pp.tight}, {"simple", pp.simple}};

  out["recovery_threshold"] = 1.0 - 2.0 * beta;
  out["sample_size_n"] = sg::sample_size_n(k, m, beta);

  if (r >= 1 && r < m)
    out["restricted_upper_bound"] = sg::restricted_upper_bound(m, k, r);
  else
    out["restricted_upper_bound"] = 1.0;
  out["restricted_lower_bound"] = sg::restricted_lower_bound(k, alpha1);

  const auto oc = sg::oracle_complexity(m, k, eps);
  out["oracle_complexity"] = {{"exact", oc.exact},
                              {"harmonic_estimate", oc.harmonic_estimate}};

  const auto q = sg::q_tilde_bounds(n, m, k, gamma, delta);
  out["q_tilde"] = {{"q1", q.q1}, {"q2", q.q2}, {"vacuous", q.vacuous}};

  const auto eb = sg::psg_expectation_bound(1.0, eps, m, k);
  out["expectation_bound_gamma1"] = {{"eta", eb.eta}, {"factor", eb.factor}};

  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_css(const std::string& input, bool synthetic,
            const std::vector<int>& k_list, const std::vector<double>& eps_list,
            int trials, std::uint64_t seed, const std::string& out_path,
            int n_rows, int m_cols, int span_size, double perturbation,
            int workers) {
  sg::ExperimentConfig config;
  config.kind = sg::ExperimentKind::css_sweep;
  config.k_values = k_list;
  config.epsilon_values = eps_list;
  config.trials = trials;
  config.master_seed = seed;
  config.n_rows = n_rows;
  config.m_cols = m_cols;
  config.span_size = span_size;
  config.perturbation = perturbation;

  sg::RunOptions opts;
  opts.workers = workers;

  std::vector<sg::ResultRow> rows;
  if (synthetic) {
    rows = sg::run_css_experiment(config, opts);
  } else {
    const sg::Matrix D = sg::read_matrix_file(input);
    for (int k : k_list) {
      struct Variant { sg::CssMethod method; double eps; };
      std::vector<Variant> variants = {{sg::CssMethod::greedy, 0.1}};
      for (double e : eps_list) variants.push_back({sg::CssMethod::psg, e});
      variants.push_back({sg::CssMethod::random, 0.1});
      for (const auto& v : variants) {
        const sg::CssTrace trace =
            sg::run_css(v.method, D, k, v.eps, sg::derive_stream(seed, k));
        sg::ResultRow row;
        row.experiment = "css-file";
        row.k = k;
        row.m = static_cast<int>(D.cols());
        row.n = static_cast<int>(D.rows());
        row.method = sg::css_method_name(v.method);
        if (v.method == sg::CssMethod::psg) row.parameter = v.eps;
        row.trials = 1;
        row.mean_error = trace.errors_by_step.empty() ? D.squaredNorm()
                                                      : trace.errors_by_step.back();
        row.mean_oracle_calls = static_cast<double>(trace.oracle_calls);
        rows.push_back(std::move(row));
      }
    }
  }
  if (out_path.empty())
    std::cout << sg::rows_to_csv(rows);
  else
    sg::write_csv(rows, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse support selection and column subset selection toolkit"};
  app.require_subcommand(1);

  // recover
  auto* recover = app.add_subcommand("recover", "run one selector on a seeded instance");
  int rec_m = 64, rec_n = 32, rec_k = 4, rec_r = 0;
  double rec_eps = 0.1;
  std::uint64_t rec_seed = 1;
  bool rec_repl = false;
  std::string rec_method = "omp";
  recover->add_option("--m", rec_m, "signal dimension")->required();
  recover->add_option("--n", rec_n, "measurement count")->required();
  recover->add_option("--k", rec_k, "sparsity")->required();
  recover->add_option("--method", rec_method, "omp|ols|psg|restricted");
  recover->add_option("--eps", rec_eps, "psg schedule parameter");
  recover->add_option("--r", rec_r, "restricted search size");
  recover->add_option("--seed", rec_seed, "instance seed");
  recover->add_flag("--replacement", rec_repl, "sample search sets with replacement");

  // mc
  auto* mc = app.add_subcommand("mc", "run a Monte Carlo sweep from a JSON config");
  std::string mc_config, mc_out, mc_svg;
  int mc_workers = 1;
  bool mc_logy = false, mc_timings = false;
  mc->add_option("--config", mc_config, "JSON config path")->required();
  mc->add_option("--out", mc_out, "CSV output path");
  mc->add_option("--svg", mc_svg, "also write a line-plot SVG");
  mc->add_option("--workers", mc_workers, "worker threads (output is identical for any count)");
  mc->add_flag("--log-y", mc_logy, "SVG uses log-scale y (zero rates floored at 1e-10)");
  mc->add_flag("--timings", mc_timings, "record wall_seconds (breaks byte-identical reruns)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form theory bounds");
  int b_m = 1000, b_n = 500, b_k = 10, b_r = 0;
  double b_eps = 0.01, b_beta = 0.1, b_gamma = 0.5, b_delta = 0.1, b_alpha1 = 0.5;
  bounds->add_option("--m", b_m);
  bounds->add_option("--n", b_n);
  bounds->add_option("--k", b_k);
  bounds->add_option("--eps", b_eps);
  bounds->add_option("--beta", b_beta);
  bounds->add_option("--gamma", b_gamma);
  bounds->add_option("--delta", b_delta);
  bounds->add_option("--r", b_r);
  bounds->add_option("--alpha1", b_alpha1);

  // css
  auto* css = app.add_subcommand("css", "column subset selection");
  std::string css_input, css_out;
  bool css_synthetic = false;
  std::vector<int> css_k_list = {20};
  std::vector<double> css_eps_list = {0.1};
  int css_trials = 1, css_nrows = 200, css_mcols = 1000, css_span = 20;
  int css_workers = 1;
  double css_pert = 0.1;
  std::uint64_t css_seed = 1;
  css->add_option("--input", css_input, "matrix file ('rows cols' header, row-major values)");
  css->add_flag("--synthetic", css_synthetic, "use planted synthetic instances");
  css->add_option("--k-list", css_k_list, "column counts to select");
  css->add_option("--eps-list", css_eps_list, "psg epsilon values");
  css->add_option("--trials", css_trials, "Monte Carlo trials (synthetic only)");
  css->add_option("--seed", css_seed, "master seed");
  css->add_option("--out", css_out, "CSV output path (stdout if omitted)");
  css->add_option("--n-rows", css_nrows, "synthetic rows");
  css->add_option("--m-cols", css_mcols, "synthetic columns");
  css->add_option("--span-size", css_span, "planted spanning set size");
  css->add_option("--perturbation", css_pert, "off-span perturbation scale");
  css->add_option("--workers", css_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (recover->parsed())
      return cmd_recover(rec_m, rec_n, rec_k, rec_method, rec_eps, rec_r,
                         rec_seed, rec_repl);
    if (mc->parsed()) {
      sg::ExperimentConfig config = sg::load_config(mc_config);
      if (!mc_out.empty()) config.out = mc_out;
      if (config.out.empty())
        throw std::invalid_argument("mc: no output path (config 'out' or --out)");
      sg::RunOptions opts;
      opts.workers = mc_workers;
      opts.include_timings = mc_timings;
      const auto rows = sg::run_experiment(config, opts);
      sg::write_csv(rows, config.out);
      if (!mc_svg.empty()) sg::write_svg(rows, mc_svg, mc_logy);
      return 0;
    }
    if (bounds->parsed())
      return cmd_bounds(b_m, b_n, b_k, b_eps, b_beta, b_gamma, b_delta, b_r, b_alpha1);
    if (css->parsed()) {
      if (css_input.empty() && !css_synthetic)
        throw std::invalid_argument("css: need --input or --synthetic");
      return cmd_css(css_input, css_synthetic, css_k_list, css_eps_list,
                     css_trials, css_seed, css_out, css_nrows, css_mcols,
                     css_span, css_pert, css_workers);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
