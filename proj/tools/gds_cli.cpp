// Copyright 2026 The GDS Sparsity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gds_cli: sparsity metrics, criteria verification, centralized sparsity and
// the compressive-sampling reconstruction experiment.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gds/criteria.hpp"
#include "gds/emit.hpp"
#include "gds/error.hpp"
#include "gds/experiment.hpp"
#include "gds/normalization.hpp"
#include "gds/reconstruction.hpp"
#include "gds/signals.hpp"
#include "gds/sparsity_core.hpp"
#include "gds/sparsity_fast.hpp"

namespace {

namespace fs = std::filesystem;

std::size_t default_parallelism() {
  if (const char* env = std::getenv("GDS_PARALLELISM")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid GDS_PARALLELISM='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    gds::write_file(path, content);
  }
}

struct SpsaFlags {
  int iterations = 0;
  double a = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double stability = -2.0;
  int restarts = 0;
  double restart_spread = 0.0;
  bool no_polish = false;

  void attach(CLI::App* app) {
    app->add_option("--spsa-iterations", iterations, "SPSA iterations per restart");
    app->add_option("--spsa-a", a, "Gain numerator (<= 0 calibrates)");
    app->add_option("--spsa-c", c, "Perturbation size relative to |x_min|");
    app->add_option("--spsa-alpha", alpha, "Gain decay exponent");
    app->add_option("--spsa-gamma", gamma, "Perturbation decay exponent");
    app->add_option("--spsa-stability", stability, "Gain stability constant (< 0: 10% of iterations)");
    app->add_option("--spsa-restarts", restarts, "Number of restarts");
    app->add_option("--spsa-restart-spread", restart_spread, "Restart spread relative to |x_min|");
    app->add_flag("--no-polish", no_polish, "Skip the feasible support refinement");
  }

  void apply(gds::SpsaConfig& cfg, CLI::App* app) const {
    if (app->count("--spsa-iterations")) cfg.iterations = iterations;
    if (app->count("--spsa-a")) cfg.a = a;
    if (app->count("--spsa-c")) cfg.c = c;
    if (app->count("--spsa-alpha")) cfg.alpha = alpha;
    if (app->count("--spsa-gamma")) cfg.gamma = gamma;
    if (app->count("--spsa-stability")) cfg.stability = stability;
    if (app->count("--spsa-restarts")) cfg.restarts = restarts;
    if (app->count("--spsa-restart-spread")) cfg.restart_spread = restart_spread;
    if (no_polish) cfg.polish = false;
    cfg.validate();
  }
};

int run_sparsity(const std::string& input, double p, const std::string& mode, bool gini) {
  std::istringstream ss(gds::read_file(input));
  const Eigen::MatrixXd m = gds::read_numeric_csv(ss);
  std::vector<double> raw(m.data(), m.data() + m.size());
  const gds::SignalVector c = gds::make_signal(raw);
  const gds::SparsityOrder order(p);
  gds::Route route = gds::Route::kAuto;
  if (mode == "fast") route = gds::Route::kFast;
  if (mode == "naive") route = gds::Route::kNaive;
  const gds::EvalPath path = gds::resolve_path(c.size(), order, route);
  const gds::SparsityValue v = gds::gds(c, order, route);
  std::cout << "n=" << v.n << " order=" << gds::format_double(p) << " path=" << gds::to_string(path)
            << " sparsity=" << gds::format_double(v.value) << '\n';
  if (gini) std::cout << "gini=" << gds::format_double(gds::gini_index(c).value) << '\n';
  return 0;
}

int run_verify(std::size_t trials, std::uint64_t seed, double p, const std::string& json_path,
               bool parallel) {
  gds::VerifyOptions options;
  options.parallel = parallel;
  const auto reports = gds::verify_criteria(gds::gds_metric(gds::SparsityOrder(p)), trials, seed, options);
  std::size_t violations = 0;
  for (const auto& r : reports) {
    std::cout << gds::label(r.criterion) << " " << gds::description(r.criterion)
              << ": trials=" << r.trials << " violations=" << r.violations
              << " worst_margin=" << gds::format_double(r.worst_margin) << '\n';
    violations += r.violations;
  }
  if (!json_path.empty()) emit_text(json_path, gds::criteria_report_json(reports) + "\n");
  return violations == 0 ? 0 : 1;
}

int run_normalize(const std::string& input, double p, const std::string& out) {
  std::istringstream ss(gds::read_file(input));
  const gds::DatasetMatrix ds = gds::fit_stats(gds::read_numeric_csv(ss));
  const gds::SparsityOrder order(p);
  std::ostringstream os;
  os << "column,sparsity,dropped_rows\n";
  for (Eigen::Index j = 0; j < ds.samples(); ++j) {
    try {
      const auto cs = gds::centralized_sparsity(ds, j, order);
      os << j << ',' << gds::format_double(cs.sparsity.value) << ',' << cs.dropped_rows << '\n';
    } catch (const gds::Error& e) {
      if (e.kind() != gds::ErrorKind::kZeroVector) throw;
      // Column sits exactly on the mean: no magnitudes to compare.
      os << j << ",nan," << ds.constant_rows() << '\n';
    }
  }
  if (ds.constant_rows() > 0) {
    std::cerr << "warning: " << ds.constant_rows() << " constant row(s) dropped\n";
  }
  emit_text(out, os.str());
  return 0;
}

struct RecoverFlags {
  std::size_t n = 100;
  int m = 30;
  double k_fraction = 0.1;
  std::string distribution = "exponential";
  double p = 4.0;
  std::uint64_t seed = 1;
  std::string signal_path;
  std::string out;
};

int run_recover(const RecoverFlags& f, gds::SpsaConfig cfg) {
  std::vector<double> raw;
  if (!f.signal_path.empty()) {
    std::istringstream ss(gds::read_file(f.signal_path));
    const Eigen::MatrixXd m = gds::read_numeric_csv(ss);
    raw.assign(m.data(), m.data() + m.size());
  } else {
    const gds::SignalSpec spec{f.n, f.k_fraction, gds::parse_distribution(f.distribution),
                               gds::mix_seed(f.seed, {1})};
    raw = gds::generate_signal(spec);
  }
  const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(raw.data(), static_cast<Eigen::Index>(raw.size()));
  const auto setup = gds::gaussian_projection(f.m, x0.size(), gds::mix_seed(f.seed, {2}));
  cfg.seed = gds::mix_seed(f.seed, {3});
  const auto result = gds::spsa_recover(setup, setup.matrix * x0, gds::SparsityOrder(f.p), cfg, x0);
  const double power = x0.squaredNorm() / static_cast<double>(x0.size());
  std::cout << "n=" << x0.size() << " m=" << f.m << " order=" << gds::format_double(f.p)
            << " iterations=" << result.iterations_used << '\n'
            << "objective=" << gds::format_double(result.objective.value)
            << " initial_objective=" << gds::format_double(result.initial_objective) << '\n'
            << "mse=" << gds::format_double(*result.mse)
            << " relative_mse=" << gds::format_double(*result.mse / power) << '\n';
  if (!f.out.empty()) {
    std::ostringstream os;
    os << "x_true,x_hat\n";
    for (Eigen::Index i = 0; i < x0.size(); ++i) {
      os << gds::format_double(x0[i]) << ',' << gds::format_double(result.x_hat[i]) << '\n';
    }
    gds::write_file(f.out, os.str());
  }
  return 0;
}

int run_grid(const std::string& config, const std::string& out, std::size_t parallelism,
             bool paper_scale, const std::string& aggregates, const std::string& heatmap) {
  gds::ExperimentGrid grid = paper_scale ? gds::ExperimentGrid::paper_scale() : gds::ExperimentGrid::desk_scale();
  if (!config.empty()) grid = gds::parse_grid_config(gds::read_file(config));
  if (paper_scale) {
    const auto paper = gds::ExperimentGrid::paper_scale();
    grid.m_values = paper.m_values;
    grid.p_values = paper.p_values;
    grid.trials = paper.trials;
    std::cerr << "warning: paper-scale grid has " << grid.cell_count()
              << " cells; expect a very long run\n";
  }
  const gds::GridTable table = gds::run_grid(grid, parallelism);
  std::ostringstream os;
  gds::write_cells_csv(os, table.cells);
  emit_text(out, os.str());
  if (!aggregates.empty()) {
    std::ostringstream as;
    gds::write_aggregates_csv(as, table.aggregates);
    gds::write_file(aggregates, as.str());
  }
  if (!heatmap.empty()) {
    std::ostringstream hs;
    gds::write_heatmap(hs, table.aggregates);
    gds::write_file(heatmap, hs.str());
  }
  std::size_t failures = 0;
  for (const auto& c : table.cells) failures += c.error.empty() ? 0 : 1;
  if (failures > 0) std::cerr << "warning: " << failures << " cell(s) failed\n";
  return 0;
}

int run_report(const std::string& input, const std::string& out_dir) {
  std::istringstream ss(gds::read_file(input));
  const auto aggregates = gds::aggregate(gds::read_cells_csv(ss));
  const auto by_m = gds::optimal_order(aggregates, gds::Marginal::kByM);
  const auto by_k = gds::optimal_order(aggregates, gds::Marginal::kByK);
  std::ostringstream m_os, k_os;
  gds::write_curve(m_os, by_m, "m");
  gds::write_curve(k_os, by_k, "k_fraction");
  if (out_dir.empty()) {
    std::cout << m_os.str() << '\n' << k_os.str();
    return 0;
  }
  fs::create_directories(out_dir);
  gds::write_file(fs::path(out_dir) / "optimal_p_vs_m.dat", m_os.str());
  gds::write_file(fs::path(out_dir) / "optimal_p_vs_k.dat", k_os.str());
  std::ostringstream hs, as;
  gds::write_heatmap(hs, aggregates);
  gds::write_aggregates_csv(as, aggregates);
  gds::write_file(fs::path(out_dir) / "heatmap.dat", hs.str());
  gds::write_file(fs::path(out_dir) / "aggregates.csv", as.str());
  std::cout << "wrote reports to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalised differential sparsity toolkit"};
  app.require_subcommand(1);

  auto* sparsity = app.add_subcommand("sparsity", "Sparsity of a vector stored as CSV");
  std::string sp_input;
  double sp_order = 1.0;
  bool sp_fast = false, sp_naive = false, sp_gini = false;
  sparsity->add_option("input", sp_input, "CSV file with the coefficients")->required();
  sparsity->add_option("--order,-p", sp_order, "GDS order p >= 1");
  auto* fast_flag = sparsity->add_flag("--fast", sp_fast, "Force the closed-form path");
  auto* naive_flag = sparsity->add_flag("--naive", sp_naive, "Force the pairwise path");
  sparsity->add_flag("--auto", "Route automatically (default)");
  fast_flag->excludes(naive_flag);
  sparsity->add_flag("--gini", sp_gini, "Also print the Gini Index");

  auto* verify = app.add_subcommand("verify", "Randomized check of the eleven sparsity criteria");
  std::size_t v_trials = 1000;
  std::uint64_t v_seed = 0;
  double v_order = 1.0;
  std::string v_json;
  bool v_parallel = false;
  verify->add_option("--trials", v_trials, "Cases per criterion");
  verify->add_option("--seed", v_seed, "Random seed");
  verify->add_option("--order,-p", v_order, "GDS order under test");
  verify->add_option("--json", v_json, "Write the JSON report here ('-' for stdout)");
  verify->add_flag("--parallel", v_parallel, "Check criteria concurrently");

  auto* normalize = app.add_subcommand("normalize", "Centralized sparsity of each dataset column");
  std::string n_input, n_out;
  double n_order = 1.0;
  normalize->add_option("input", n_input, "CSV dataset: rows are coefficients, columns samples")->required();
  normalize->add_option("--order,-p", n_order, "GDS order p >= 1");
  normalize->add_option("--out", n_out, "Output CSV (default stdout)");

  auto* recover = app.add_subcommand("recover", "Recover one randomly projected sparse signal");
  RecoverFlags rf;
  SpsaFlags r_spsa;
  recover->add_option("--n", rf.n, "Signal length");
  recover->add_option("--m", rf.m, "Number of measurements");
  recover->add_option("--k-fraction", rf.k_fraction, "Fraction of non-zeros");
  recover->add_option("--distribution", rf.distribution, "binomial|uniform|normal|exponential");
  recover->add_option("--order,-p", rf.p, "GDS order p >= 1");
  recover->add_option("--seed", rf.seed, "Random seed");
  recover->add_option("--signal", rf.signal_path, "Use this CSV signal instead of a generated one");
  recover->add_option("--out", rf.out, "Write x_true,x_hat CSV here");
  r_spsa.attach(recover);

  auto* grid = app.add_subcommand("grid", "Run the reconstruction experiment grid");
  std::string g_config, g_out, g_agg, g_heat;
  std::size_t g_par = default_parallelism();
  bool g_paper = false;
  grid->add_option("--config", g_config, "JSON grid configuration");
  grid->add_option("--out", g_out, "Results CSV (default stdout)");
  grid->add_option("--parallelism,-j", g_par, "Worker threads (env GDS_PARALLELISM)");
  grid->add_option("--aggregates", g_agg, "Write per-cell mean/median CSV");
  grid->add_option("--heatmap", g_heat, "Write gnuplot heatmap data");
  grid->add_flag("--paper-scale", g_paper, "Use M = 1..99, p = 1..10 and 100 trials");

  auto* report = app.add_subcommand("report", "Optimal-order curves from a results CSV");
  std::string rp_input, rp_out;
  report->add_option("input", rp_input, "Results CSV written by 'grid'")->required();
  report->add_option("--out-dir", rp_out, "Directory for curve and heatmap files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sparsity) {
      return run_sparsity(sp_input, sp_order, sp_fast ? "fast" : (sp_naive ? "naive" : "auto"), sp_gini);
    }
    if (*verify) return run_verify(v_trials, v_seed, v_order, v_json, v_parallel);
    if (*normalize) return run_normalize(n_input, n_order, n_out);
    if (*recover) {
      gds::SpsaConfig cfg;
      r_spsa.apply(cfg, recover);
      return run_recover(rf, cfg);
    }
    if (*grid) return run_grid(g_config, g_out, g_par, g_paper, g_agg, g_heat);
    if (*report) return run_report(rp_input, rp_out);
  } catch (const gds::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
