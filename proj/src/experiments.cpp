#include "sparsegreedy/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sparsegreedy/bounds.hpp"
#include "sparsegreedy/css.hpp"
#include "sparsegreedy/instances.hpp"
#include "sparsegreedy/select.hpp"

namespace sg {

namespace {

using nlohmann::json;

ExperimentKind kind_from_name(const std::string& s) {
  if (s == "recovery-sweep") return ExperimentKind::recovery_sweep;
  if (s == "restricted-sweep") return ExperimentKind::restricted_sweep;
  if (s == "css-sweep") return ExperimentKind::css_sweep;
  throw std::invalid_argument("unknown experiment kind: " + s);
}

RRule r_rule_from_name(const std::string& s) {
  if (s == "fixed") return RRule::fixed;
  if (s == "m_over_sqrt_k") return RRule::m_over_sqrt_k;
  if (s == "m_over_2") return RRule::m_over_2;
  if (s == "alpha_m") return RRule::alpha_m;
  throw std::invalid_argument("unknown r_rule: " + s);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const std::vector<std::string> known = {
      "experiment", "k_values", "beta_values", "epsilon_values", "r_rule",
      "r_fixed", "alpha1", "trials", "master_seed", "m_rule", "m_explicit",
      "n_rule", "n_explicit", "replacement", "n_rows", "m_cols", "span_size",
      "perturbation", "out"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("unknown config key: " + it.key());
  }

  ExperimentConfig c;
  c.kind = kind_from_name(j.at("experiment").get<std::string>());
  c.k_values = j.at("k_values").get<std::vector<int>>();
  if (j.contains("beta_values")) c.beta_values = j["beta_values"].get<std::vector<double>>();
  if (j.contains("epsilon_values"))
    c.epsilon_values = j["epsilon_values"].get<std::vector<double>>();
  if (j.contains("r_rule")) c.r_rule = r_rule_from_name(j["r_rule"].get<std::string>());
  if (j.contains("r_fixed")) c.r_fixed = j["r_fixed"].get<int>();
  if (j.contains("alpha1")) c.alpha1 = j["alpha1"].get<double>();
  if (j.contains("trials")) c.trials = j["trials"].get<int>();
  if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("m_rule")) {
    const std::string s = j["m_rule"].get<std::string>();
    if (s == "two_k_pow_three_halves") c.m_rule = MRule::two_k_pow_three_halves;
    else if (s == "explicit") c.m_rule = MRule::explicit_m;
    else throw std::invalid_argument("unknown m_rule: " + s);
  }
  if (j.contains("m_explicit")) c.m_explicit = j["m_explicit"].get<int>();
  if (j.contains("n_rule")) {
    const std::string s = j["n_rule"].get<std::string>();
    if (s == "sample_size") c.n_rule = NRule::sample_size;
    else if (s == "explicit") c.n_rule = NRule::explicit_n;
    else throw std::invalid_argument("unknown n_rule: " + s);
  }
  if (j.contains("n_explicit")) c.n_explicit = j["n_explicit"].get<int>();
  if (j.contains("replacement")) c.replacement = j["replacement"].get<bool>();
  if (j.contains("n_rows")) c.n_rows = j["n_rows"].get<int>();
  if (j.contains("m_cols")) c.m_cols = j["m_cols"].get<int>();
  if (j.contains("span_size")) c.span_size = j["span_size"].get<int>();
  if (j.contains("perturbation")) c.perturbation = j["perturbation"].get<double>();
  if (j.contains("out")) c.out = j["out"].get<std::string>();

  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.k_values.empty()) throw std::invalid_argument("k_values must be non-empty");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

int m_from_rule(const ExperimentConfig& c, int k) {
  if (c.m_rule == MRule::explicit_m) {
    if (c.m_explicit <= k) throw std::invalid_argument("m_explicit must exceed k");
    return c.m_explicit;
  }
  return static_cast<int>(std::lround(2.0 * std::pow(k, 1.5)));
}

int n_from_rule(const ExperimentConfig& c, int k, int m, double beta) {
  if (c.n_rule == NRule::explicit_n) return c.n_explicit;
  return sample_size_n(k, m, beta);
}

int r_from_rule(const ExperimentConfig& c, int k, int m) {
  switch (c.r_rule) {
    case RRule::fixed: return c.r_fixed;
    case RRule::m_over_sqrt_k:
      return std::max(1, static_cast<int>(std::lround(m / std::sqrt(k))));
    case RRule::m_over_2: return std::max(1, m / 2);
    case RRule::alpha_m:
      return std::max(1, static_cast<int>(std::lround(c.alpha1 * m)));
  }
  return m;
}

// Runs fn(trial) for every trial index on a bounded pool. Results are keyed
// by trial index so output is identical for any worker count.
void parallel_trials(int trials, int workers,
                     const std::function<void(int)>& fn) {
  if (workers <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int count = std::min(workers, trials);
  pool.reserve(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= trials) return;
        fn(t);
      }
    });
  }
  for (auto& th : pool) th.join();
}

struct TrialOutcome {
  bool errored = false;
  bool success = false;
  long long oracle_calls = 0;
};

// Shared driver for the recovery and restricted sweeps.
ResultRow sweep_point(const ExperimentConfig& config, const RunOptions& opts,
                      std::uint64_t point_seed, int k, int m, int n,
                      Method method, double epsilon, int r) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_trials(config.trials, opts.workers, [&](int t) {
    TrialOutcome& out = outcomes[t];
    try {
      const std::uint64_t s = derive_stream(point_seed, t);
      const SparseInstance inst = gen_instance(m, n, k, derive_stream(s, 0));
      SelectorOptions sel;
      sel.epsilon = epsilon;
      sel.r = r;
      sel.replacement = config.replacement;
      sel.seed = derive_stream(s, 1);
      sel.quiet = true;
      const SelectionTrace trace = run_selector(method, inst.A, inst.y, k, sel);
      out.success = !trace.failed && same_support(trace.selected, inst.support);
      out.oracle_calls = trace.oracle_calls;
    } catch (...) {
      out.errored = true;
    }
  });

  ResultRow row;
  row.k = k;
  row.m = m;
  row.n = n;
  row.method = method_name(method);
  row.trials = config.trials;
  int successes = 0;
  long long calls = 0;
  int ok_trials = 0;
  for (const TrialOutcome& out : outcomes) {
    if (out.errored) {
      ++row.error_trials;
      continue;
    }
    ++ok_trials;
    successes += out.success ? 1 : 0;
    calls += out.oracle_calls;
  }
  row.successes = successes;
  row.success_rate = static_cast<double>(successes) / config.trials;
  if (ok_trials > 0)
    row.mean_oracle_calls = static_cast<double>(calls) / ok_trials;
  if (opts.include_timings) {
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_mc_recovery(const ExperimentConfig& config,
                                       const RunOptions& opts) {
  std::vector<double> betas = config.beta_values;
  if (betas.empty()) betas = {0.1};
  std::vector<ResultRow> rows;
  int point = 0;
  for (double beta : betas) {
    for (int k : config.k_values) {
      const int m = m_from_rule(config, k);
      const int n = n_from_rule(config, k, m, beta);
      const double epsilon = beta / k;
      ResultRow row =
          sweep_point(config, opts, derive_stream(config.master_seed, point++),
                      k, m, n, Method::psg, epsilon, 0);
      row.experiment = "recovery-sweep";
      row.parameter = epsilon;
      row.theory_lower = 1.0 - 2.0 * beta;
      row.theory_upper = p_product_lower_bound(k, epsilon).tight;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ResultRow> run_mc_restricted(const ExperimentConfig& config,
                                         const RunOptions& opts) {
  const double beta = config.beta_values.empty() ? 0.1 : config.beta_values[0];
  std::vector<ResultRow> rows;
  int point = 0;
  for (int k : config.k_values) {
    const int m = m_from_rule(config, k);
    const int n = n_from_rule(config, k, m, beta);
    const int r = r_from_rule(config, k, m);
    ResultRow row =
        sweep_point(config, opts, derive_stream(config.master_seed, point++),
                    k, m, n, Method::restricted, 0.0, r);
    row.experiment = "restricted-sweep";
    row.parameter = static_cast<double>(r);
    row.theory_upper = r < m ? restricted_upper_bound(m, k, r) : 1.0;
    const double alpha = static_cast<double>(r) / m;
    if (alpha > 0.0 && alpha < 1.0)
      row.theory_lower = restricted_lower_bound(k, alpha);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> run_css_experiment(const ExperimentConfig& config,
                                          const RunOptions& opts) {
  std::vector<double> eps_values = config.epsilon_values;
  if (eps_values.empty()) eps_values = {0.1};

  struct MethodStats {
    double error_sum = 0.0;
    long long call_sum = 0;
    int ok = 0;
    int errored = 0;
  };

  std::vector<ResultRow> rows;
  int point = 0;
  for (int k : config.k_values) {
    if (k > config.m_cols)
      throw std::invalid_argument("css-sweep: k exceeds m_cols");
    const std::uint64_t point_seed = derive_stream(config.master_seed, point++);

    // method index 0 = greedy, 1..eps = psg variants, last = random
    const int n_methods = 2 + static_cast<int>(eps_values.size());
    std::vector<std::vector<MethodStats>> per_trial(
        config.trials, std::vector<MethodStats>(n_methods));
    std::vector<double> svd_errors(config.trials, 0.0);
    std::vector<char> svd_ok(config.trials, 0);

    parallel_trials(config.trials, opts.workers, [&](int t) {
      const std::uint64_t s = derive_stream(point_seed, t);
      CssInstance inst;
      try {
        inst = gen_css_instance(config.n_rows, config.m_cols, config.span_size,
                                config.perturbation, derive_stream(s, 0));
        const int k_svd = std::min(
            k, static_cast<int>(std::min(inst.D.rows(), inst.D.cols())));
        svd_errors[t] = best_rank_k_error(inst.D, k_svd);
        svd_ok[t] = 1;
      } catch (...) {
        for (auto& st : per_trial[t]) st.errored = 1;
        return;
      }
      for (int mi = 0; mi < n_methods; ++mi) {
        MethodStats& st = per_trial[t][mi];
        try {
          CssTrace trace;
          if (mi == 0) {
            trace = run_css(CssMethod::greedy, inst.D, k);
          } else if (mi <= static_cast<int>(eps_values.size())) {
            trace = run_css(CssMethod::psg, inst.D, k, eps_values[mi - 1],
                            derive_stream(s, mi));
          } else {
            trace = run_css(CssMethod::random, inst.D, k, 0.1,
                            derive_stream(s, mi));
          }
          st.error_sum = trace.errors_by_step.empty() ? inst.D.squaredNorm()
                                                      : trace.errors_by_step.back();
          st.call_sum = trace.oracle_calls;
          st.ok = 1;
        } catch (...) {
          st.errored = 1;
        }
      }
    });

    for (int mi = 0; mi < n_methods; ++mi) {
      ResultRow row;
      row.experiment = "css-sweep";
      row.k = k;
      row.m = config.m_cols;
      row.n = config.n_rows;
      row.trials = config.trials;
      if (mi == 0) {
        row.method = "greedy";
      } else if (mi <= static_cast<int>(eps_values.size())) {
        row.method = "psg";
        row.parameter = eps_values[mi - 1];
      } else {
        row.method = "random";
      }
      MethodStats total;
      for (int t = 0; t < config.trials; ++t) {
        const MethodStats& st = per_trial[t][mi];
        if (st.errored) ++total.errored;
        else if (st.ok) {
          total.error_sum += st.error_sum;
          total.call_sum += st.call_sum;
          ++total.ok;
        }
      }
      row.error_trials = total.errored;
      if (total.ok > 0) {
        row.mean_error = total.error_sum / total.ok;
        row.mean_oracle_calls = static_cast<double>(total.call_sum) / total.ok;
      }
      double svd_sum = 0.0;
      int svd_count = 0;
      for (int t = 0; t < config.trials; ++t)
        if (svd_ok[t]) {
          svd_sum += svd_errors[t];
          ++svd_count;
        }
      if (svd_count > 0) row.svd_baseline = svd_sum / svd_count;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const RunOptions& opts) {
  switch (config.kind) {
    case ExperimentKind::recovery_sweep: return run_mc_recovery(config, opts);
    case ExperimentKind::restricted_sweep: return run_mc_restricted(config, opts);
    case ExperimentKind::css_sweep: return run_css_experiment(config, opts);
  }
  throw std::logic_error("unreachable");
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt(*v) : ""; }
std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "experiment,k,m,n,method,parameter,trials,successes,success_rate,"
         "mean_oracle_calls,mean_error,theory_lower,theory_upper,"
         "svd_baseline,error_trials,wall_seconds\n";
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << r.k << ',' << r.m << ',' << r.n << ','
        << r.method << ',' << cell(r.parameter) << ',' << r.trials << ','
        << cell(r.successes) << ',' << cell(r.success_rate) << ','
        << cell(r.mean_oracle_calls) << ',' << cell(r.mean_error) << ','
        << cell(r.theory_lower) << ',' << cell(r.theory_upper) << ','
        << cell(r.svd_baseline) << ',' << r.error_trials << ','
        << cell(r.wall_seconds) << '\n';
  }
  return out.str();
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << rows_to_csv(rows);
}

std::string rows_to_svg(const std::vector<ResultRow>& rows, bool log_y) {
  constexpr double W = 720, H = 480;
  constexpr double ML = 70, MR = 160, MT = 30, MB = 50;
  constexpr double kLogFloor = 1e-10;

  // One series per (method, parameter); y is success_rate when present,
  // otherwise mean_error.
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const ResultRow& r : rows) {
    double y;
    if (r.success_rate) y = *r.success_rate;
    else if (r.mean_error) y = *r.mean_error;
    else continue;
    if (log_y) y = std::max(y, kLogFloor);
    std::string key = r.method;
    if (r.parameter) key += " (" + fmt(*r.parameter) + ")";
    series[key].push_back({static_cast<double>(r.k), y});
    xmin = std::min(xmin, static_cast<double>(r.k));
    xmax = std::max(xmax, static_cast<double>(r.k));
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (series.empty()) {
    xmin = 0; xmax = 1; ymin = 0; ymax = 1;
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (log_y) {
    ymin = std::max(ymin, kLogFloor);
    if (ymax <= ymin) ymax = ymin * 10;
  } else if (ymax <= ymin) {
    ymax = ymin + 1;
  }

  auto sx = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto sy = [&](double y) {
    const double t = log_y ? (std::log10(y) - std::log10(ymin)) /
                                 (std::log10(ymax) - std::log10(ymin))
                           : (y - ymin) / (ymax - ymin);
    return H - MB - t * (H - MT - MB);
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
      << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
      << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
  // ticks
  for (int i = 0; i <= 4; ++i) {
    const double x = xmin + (xmax - xmin) * i / 4.0;
    out << "<text x=\"" << sx(x) << "\" y=\"" << H - MB + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    const double y = log_y ? ymin * std::pow(ymax / ymin, i / 4.0)
                           : ymin + (ymax - ymin) * i / 4.0;
    out << "<text x=\"" << ML - 8 << "\" y=\"" << sy(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  out << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">k</text>\n";

  int idx = 0;
  for (const auto& [name, points] : series) {
    const char* color = kPalette[idx % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : points)
      out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << W - MR + 12 << "\" y=\"" << MT + 16 * idx + 10
        << "\" font-size=\"11\" fill=\"" << color << "\">" << name << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::vector<ResultRow>& rows, const std::string& path,
               bool log_y) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << rows_to_svg(rows, log_y);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw std::runtime_error("matrix file: bad header (want 'rows cols')");
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> M(i, j)))
        throw std::runtime_error("matrix file: not enough values");
  return M;
}

}  // namespace sg
