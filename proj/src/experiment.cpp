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

#include "gds/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>

#include "gds/error.hpp"
#include "gds/sparsity_fast.hpp"

namespace gds {

void ExperimentGrid::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kBadConfig, what); };
  if (n < 2) fail("grid n must be >= 2");
  if (distributions.empty() || k_fractions.empty() || m_values.empty() || p_values.empty()) {
    fail("grid axes must be non-empty");
  }
  if (trials < 1) fail("grid trials must be >= 1");
  for (double k : k_fractions) {
    const SignalSpec spec{n, k, Distribution::kNormal, 0};
    if (!(k > 0.0 && k <= 1.0) || spec.nonzeros() < 1) {
      fail("k_fraction " + std::to_string(k) + " yields no non-zeros for n=" + std::to_string(n));
    }
  }
  for (int m : m_values) {
    if (m < 1 || static_cast<std::size_t>(m) >= n) {
      fail("every M must satisfy 1 <= M < n, got " + std::to_string(m));
    }
  }
  for (double p : p_values) {
    if (!(p >= 1.0) || !std::isfinite(p)) fail("every p must be >= 1");
  }
  spsa.validate();
}

std::size_t ExperimentGrid::cell_count() const noexcept {
  return distributions.size() * k_fractions.size() * m_values.size() * p_values.size() * trials;
}

ExperimentGrid ExperimentGrid::desk_scale() {
  ExperimentGrid g;
  g.distributions.assign(kAllDistributions.begin(), kAllDistributions.end());
  g.k_fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  g.m_values = {10, 20, 30, 40, 50, 60, 70, 80, 90};
  g.p_values = {1, 2, 3, 4, 5, 6, 7};
  g.trials = 20;
  return g;
}

ExperimentGrid ExperimentGrid::paper_scale() {
  ExperimentGrid g = desk_scale();
  g.m_values.resize(99);
  std::iota(g.m_values.begin(), g.m_values.end(), 1);
  g.p_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  g.trials = 100;
  return g;
}

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return (v.size() % 2 == 1) ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Work unit: one signal, one projection, every order.
struct Task {
  std::size_t dist_index;
  std::size_t k_index;
  std::size_t m_index;
  std::size_t trial;
};

void run_task(const ExperimentGrid& g, const Task& t, std::span<CellResult> out) {
  const Distribution dist = g.distributions[t.dist_index];
  const double kf = g.k_fractions[t.k_index];
  const int m = g.m_values[t.m_index];
  const auto di = static_cast<std::uint64_t>(dist);
  const auto mi = static_cast<std::uint64_t>(m);

  for (std::size_t pi = 0; pi < g.p_values.size(); ++pi) {
    out[pi] = CellResult{dist, kf, m, g.p_values[pi], t.trial,
                         std::numeric_limits<double>::quiet_NaN(), 0.0, {}};
  }
  try {
    const SignalSpec spec{g.n, kf, dist, mix_seed(g.base_seed, {1, di, t.k_index, t.trial})};
    const std::vector<double> raw = generate_signal(spec);
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(raw.data(), static_cast<Eigen::Index>(raw.size()));
    const double power = x0.squaredNorm() / static_cast<double>(g.n);

    const ProjectionSetup setup = gaussian_projection(
        m, static_cast<Eigen::Index>(g.n), mix_seed(g.base_seed, {2, di, t.k_index, mi, t.trial}));
    const FeasibleParametrization fp = parametrize_feasible(setup, setup.matrix * x0);

    SpsaConfig cfg = g.spsa;
    cfg.seed = mix_seed(g.base_seed, {3, di, t.k_index, mi, t.trial});
    for (std::size_t pi = 0; pi < g.p_values.size(); ++pi) {
      out[pi].signal_power = power;
      try {
        const RecoveryResult r = spsa_recover(fp, SparsityOrder(g.p_values[pi]), cfg, x0);
        out[pi].mse = *r.mse;
      } catch (const std::exception& e) {
        out[pi].error = e.what();
      }
    }
  } catch (const std::exception& e) {
    for (auto& cell : out) cell.error = e.what();
  }
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<CellResult>& cells) {
  using Key = std::tuple<Distribution, double, int, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const CellResult*>> groups;
  for (const CellResult& c : cells) {
    const Key key{c.distribution, c.k_fraction, c.m, c.p};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&c);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(order.size());
  for (const Key& key : order) {
    std::vector<double> values;
    std::size_t failures = 0;
    for (const CellResult* c : groups[key]) {
      if (std::isfinite(c->mse)) {
        values.push_back(c->mse);
      } else {
        ++failures;
      }
    }
    const double mean = values.empty()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : std::accumulate(values.begin(), values.end(), 0.0) /
                                  static_cast<double>(values.size());
    rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), mean,
                    median_of(values), values.size(), failures});
  }
  return rows;
}

GridTable run_grid(const ExperimentGrid& grid, std::size_t parallelism) {
  grid.validate();
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < grid.distributions.size(); ++d) {
    for (std::size_t k = 0; k < grid.k_fractions.size(); ++k) {
      for (std::size_t m = 0; m < grid.m_values.size(); ++m) {
        for (std::size_t t = 0; t < grid.trials; ++t) tasks.push_back({d, k, m, t});
      }
    }
  }
  const std::size_t np = grid.p_values.size();
  std::vector<CellResult> scratch(tasks.size() * np);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      run_task(grid, tasks[i], std::span<CellResult>(scratch).subspan(i * np, np));
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(1, tasks.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Reorder from (dist, K, M, trial, p) to (dist, K, M, p, trial).
  GridTable table;
  table.cells.reserve(scratch.size());
  const std::size_t per_m = grid.trials * np;
  for (std::size_t block = 0; block < scratch.size(); block += per_m) {
    for (std::size_t pi = 0; pi < np; ++pi) {
      for (std::size_t t = 0; t < grid.trials; ++t) {
        table.cells.push_back(scratch[block + t * np + pi]);
      }
    }
  }
  table.aggregates = aggregate(table.cells);
  return table;
}

double prototype_sparsity_check(Distribution distribution, double k_fraction, std::size_t trials,
                                std::uint64_t seed, std::size_t n) {
  if (trials < 100) throw Error(ErrorKind::kBadCount, "prototype check needs >= 100 trials");
  const SparsityOrder first(1.0);
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SignalSpec spec{n, k_fraction, distribution, mix_seed(seed, {static_cast<std::uint64_t>(distribution), t})};
    total += gds(make_signal(generate_signal(spec)), first).value;
  }
  return total / static_cast<double>(trials);
}

std::vector<OptimalPick> optimal_picks(const std::vector<AggregateRow>& table) {
  if (table.empty()) throw Error(ErrorKind::kNoData, "no aggregate rows");
  using Key = std::tuple<Distribution, double, int>;
  std::vector<Key> order;
  std::map<Key, std::vector<const AggregateRow*>> groups;
  std::vector<double> orders;
  for (const AggregateRow& r : table) {
    const Key key{r.distribution, r.k_fraction, r.m};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
    if (std::find(orders.begin(), orders.end(), r.p) == orders.end()) orders.push_back(r.p);
  }
  if (orders.size() < 2) throw Error(ErrorKind::kNoData, "optimal order needs at least two orders");

  std::vector<OptimalPick> picks;
  for (const Key& key : order) {
    const AggregateRow* best = nullptr;
    for (const AggregateRow* r : groups[key]) {
      if (!std::isfinite(r->mean_mse)) continue;
      if (best == nullptr || r->mean_mse < best->mean_mse ||
          (r->mean_mse == best->mean_mse && r->p < best->p)) {
        best = r;
      }
    }
    if (best != nullptr) picks.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), best->p});
  }
  if (picks.empty()) throw Error(ErrorKind::kNoData, "no cell has a finite MSE");
  return picks;
}

std::vector<CurvePoint> optimal_order(const std::vector<AggregateRow>& table, Marginal marginal) {
  std::map<double, std::pair<double, std::size_t>> acc;
  for (const OptimalPick& pick : optimal_picks(table)) {
    const double x = marginal == Marginal::kByM ? static_cast<double>(pick.m) : pick.k_fraction;
    auto& [sum, count] = acc[x];
    sum += pick.p;
    ++count;
  }
  std::vector<CurvePoint> curve;
  for (const auto& [x, sc] : acc) {
    curve.push_back({x, sc.first / static_cast<double>(sc.second), sc.second});
  }
  return curve;
}

}  // namespace gds
