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

#include "gds/normalization.hpp"

#include <cmath>
#include <string>

#include "gds/error.hpp"

namespace gds {

std::size_t DatasetMatrix::constant_rows() const noexcept {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < stds_.size(); ++i) {
    if (stds_[i] == 0.0) ++count;
  }
  return count;
}

DatasetMatrix fit_stats(Eigen::MatrixXd x) {
  if (x.cols() < 2) {
    throw Error(ErrorKind::kInsufficientSamples,
                "need at least 2 samples, got " + std::to_string(x.cols()));
  }
  if (x.rows() < 1) {
    throw Error(ErrorKind::kEmptyVector, "dataset has no coefficients");
  }
  DatasetMatrix ds;
  const double n = static_cast<double>(x.cols());
  ds.means_ = x.rowwise().sum() / n;
  ds.stds_.resize(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double ss = (x.row(i).array() - ds.means_[i]).square().sum();
    ds.stds_[i] = std::sqrt(ss / (n - 1.0));
  }
  ds.entries_ = std::move(x);
  return ds;
}

CentralizedColumn centralize(const DatasetMatrix& ds, std::span<const double> column) {
  if (static_cast<Eigen::Index>(column.size()) != ds.coefficients()) {
    throw Error(ErrorKind::kBadShape, "column length " + std::to_string(column.size()) +
                                          " does not match " +
                                          std::to_string(ds.coefficients()) + " coefficients");
  }
  CentralizedColumn out;
  out.values.reserve(column.size());
  for (Eigen::Index i = 0; i < ds.coefficients(); ++i) {
    const double sd = ds.stds()[i];
    if (sd == 0.0) {
      ++out.dropped_rows;
      continue;
    }
    out.values.push_back((column[static_cast<std::size_t>(i)] - ds.means()[i]) / sd);
  }
  if (out.values.empty()) {
    throw Error(ErrorKind::kDegenerateDataset, "every coefficient row is constant");
  }
  return out;
}

CentralizedColumn centralized_column(const DatasetMatrix& ds, Eigen::Index j) {
  if (j < 0 || j >= ds.samples()) {
    throw Error(ErrorKind::kBadShape, "column index " + std::to_string(j) + " out of range");
  }
  const Eigen::VectorXd col = ds.entries().col(j);
  return centralize(ds, std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
}

CentralizedSparsity centralized_sparsity(const DatasetMatrix& ds, Eigen::Index j,
                                         const SparsityOrder& order, Route route) {
  const CentralizedColumn col = centralized_column(ds, j);
  const SignalVector mags = make_signal(col.values);
  return {gds(mags, order, route), col.dropped_rows};
}

}  // namespace gds
