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

// Centralized sparsity for datasets whose coefficients are not commensurate:
// each coefficient row is z-scored across the samples before GDS is applied
// to a column.

#ifndef GDS_NORMALIZATION_HPP_
#define GDS_NORMALIZATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gds/sparsity_core.hpp"
#include "gds/sparsity_fast.hpp"

namespace gds {

// N x n dataset (rows are coefficients, columns are samples) with per-row
// mean and sample standard deviation (n - 1 divisor).
class DatasetMatrix {
 public:
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  const Eigen::VectorXd& means() const noexcept { return means_; }
  const Eigen::VectorXd& stds() const noexcept { return stds_; }
  Eigen::Index coefficients() const noexcept { return entries_.rows(); }
  Eigen::Index samples() const noexcept { return entries_.cols(); }

  // Number of rows with zero spread; these never enter a centralized vector.
  std::size_t constant_rows() const noexcept;

 private:
  friend DatasetMatrix fit_stats(Eigen::MatrixXd x);

  Eigen::MatrixXd entries_;
  Eigen::VectorXd means_;
  Eigen::VectorXd stds_;
};

// Throws kInsufficientSamples when there are fewer than two columns.
DatasetMatrix fit_stats(Eigen::MatrixXd x);

struct CentralizedColumn {
  // z-scores of the non-constant rows, in row order.
  std::vector<double> values;
  // Rows skipped because their standard deviation is zero.
  std::size_t dropped_rows = 0;
};

// z-scores an arbitrary N-vector with the fitted statistics.
// Throws kBadShape on length mismatch, kDegenerateDataset if every row is constant.
CentralizedColumn centralize(const DatasetMatrix& ds, std::span<const double> column);

// Column j (0-based) of the fitting dataset.
CentralizedColumn centralized_column(const DatasetMatrix& ds, Eigen::Index j);

struct CentralizedSparsity {
  SparsityValue sparsity;
  std::size_t dropped_rows;
};

// GDS of the magnitudes of the centralized column j.
CentralizedSparsity centralized_sparsity(const DatasetMatrix& ds, Eigen::Index j,
                                         const SparsityOrder& order,
                                         Route route = Route::kAuto);

}  // namespace gds

#endif  // GDS_NORMALIZATION_HPP_
