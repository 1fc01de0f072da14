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

#ifndef GDS_EXPERIMENT_HPP_
#define GDS_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gds/reconstruction.hpp"
#include "gds/signals.hpp"

namespace gds {

// The (distribution x K x M x p x trial) reconstruction experiment.
struct ExperimentGrid {
  std::size_t n = 100;
  std::vector<Distribution> distributions;
  std::vector<double> k_fractions;
  std::vector<int> m_values;
  std::vector<double> p_values;
  std::size_t trials = 20;
  std::uint64_t base_seed = 0;
  SpsaConfig spsa;

  // Throws kBadConfig when the grid is empty or out of range.
  void validate() const;
  std::size_t cell_count() const noexcept;

  // 4 laws, K in {10%..60%}, M in {10, 20, .., 90}, p in {1..7}, 20 trials.
  static ExperimentGrid desk_scale();
  // M in {1..99}, p in {1..10}, 100 trials.
  static ExperimentGrid paper_scale();
};

struct CellResult {
  Distribution distribution;
  double k_fraction;
  int m;
  double p;
  std::size_t trial;
  double mse;          // NaN when the cell failed
  double signal_power;  // (1/N) |x0|^2
  std::string error;   // empty on success
};

struct AggregateRow {
  Distribution distribution;
  double k_fraction;
  int m;
  double p;
  double mean_mse;
  double median_mse;
  std::size_t count;     // successful trials
  std::size_t failures;
};

struct GridTable {
  std::vector<CellResult> cells;
  std::vector<AggregateRow> aggregates;
};

// Mean and median MSE per (distribution, K, M, p), ordered as the grid.
std::vector<AggregateRow> aggregate(const std::vector<CellResult>& cells);

// Cells are ordered distribution, K, M, p, trial. The output does not depend
// on `parallelism`: every cell draws from seeds derived from base_seed and
// its grid coordinates. The same signal is reused across M and p, and the
// same projection across p.
GridTable run_grid(const ExperimentGrid& grid, std::size_t parallelism = 1);

// Mean first-order GDS of generated signals. Throws kBadCount for trials < 100.
double prototype_sparsity_check(Distribution distribution, double k_fraction, std::size_t trials,
                                std::uint64_t seed = 0, std::size_t n = 100);

struct OptimalPick {
  Distribution distribution;
  double k_fraction;
  int m;
  double p;
};

// Argmin of mean MSE over p per (distribution, K, M); ties go to the
// smallest p. Throws kNoData when the table is empty or has < 2 orders.
std::vector<OptimalPick> optimal_picks(const std::vector<AggregateRow>& table);

enum class Marginal { kByM, kByK };

struct CurvePoint {
  double x;  // M or K fraction
  double mean_optimal_p;
  std::size_t cells;
};

// Mean optimal order as a function of M (averaged over laws and K) or of K
// (averaged over laws and M).
std::vector<CurvePoint> optimal_order(const std::vector<AggregateRow>& table, Marginal marginal);

}  // namespace gds

#endif  // GDS_EXPERIMENT_HPP_
