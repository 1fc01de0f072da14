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

// Reference evaluation of the Generalised Differential Sparsity (GDS) family
// and the Gini Index.
//
// For a vector c of magnitudes sorted ascending, the GDS of order p >= 1 is
//
//   S_p(c) = 1 / (N * sum_i c_i^p) * sum_{i<j} (c_j - c_i)^p
//
// which lies in [0, 1 - 1/N]. Order 1 coincides with the Gini Index.

#ifndef GDS_SPARSITY_CORE_HPP_
#define GDS_SPARSITY_CORE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gds {

// Nonnegative magnitudes, sorted ascending once at construction.
class SignalVector {
 public:
  // Takes absolute values and sorts. Throws kEmptyVector on empty input.
  static SignalVector from_raw(std::span<const double> raw);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool sorted() const noexcept { return sorted_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  double max() const noexcept { return coeffs_.back(); }
  bool has_positive() const noexcept { return coeffs_.back() > 0.0; }

  // Coefficients divided by max(); every entry lands in [0, 1].
  // Throws kZeroVector when no coefficient is positive.
  std::vector<double> max_normalized() const;

 private:
  explicit SignalVector(std::vector<double> coeffs);

  std::vector<double> coeffs_;
  bool sorted_ = false;
};

SignalVector make_signal(std::span<const double> raw);

inline SignalVector make_signal(const std::vector<double>& raw) {
  return make_signal(std::span<const double>(raw));
}

// The order p of a GDS metric. Integer orders carry k with p in {2k, 2k+1}.
class SparsityOrder {
 public:
  // Throws kBadOrder unless p is finite and >= 1.
  explicit SparsityOrder(double p);

  double p() const noexcept { return p_; }
  bool is_integer() const noexcept { return parity_k_.has_value(); }
  bool is_even() const noexcept { return is_integer() && integer_p() % 2 == 0; }
  std::optional<int> parity_k() const noexcept { return parity_k_; }
  // Only meaningful when is_integer().
  int integer_p() const noexcept { return static_cast<int>(p_); }

  friend bool operator==(const SparsityOrder& a, const SparsityOrder& b) {
    return a.p_ == b.p_;
  }

 private:
  double p_;
  std::optional<int> parity_k_;
};

struct SparsityValue {
  double value;
  SparsityOrder order;
  std::size_t n;
};

// Pairwise double-sum evaluation; accepts any real p >= 1. O(N^2).
// Throws kZeroVector when every coefficient is zero.
SparsityValue gds_naive(const SignalVector& c, const SparsityOrder& order);

// Gini Index: 1 - 2 sum_i (c_i / |c|_1) ((N - i + 1/2) / N), i 1-based.
SparsityValue gini_index(const SignalVector& c);

// Theorem-level range of S_p for vectors of length n: (0, 1 - 1/n).
std::pair<double, double> sparsity_bounds(std::size_t n);

// x^e for nonnegative integer e by repeated squaring.
double ipow(double x, int e) noexcept;

}  // namespace gds

#endif  // GDS_SPARSITY_CORE_HPP_
