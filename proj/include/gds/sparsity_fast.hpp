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

// O(k^2 N) closed forms of GDS for integer orders.
//
// Even order p = 2k:
//   S_2k = 1 + 1/(N |c|_2k^2k) [ sum_{w=1}^{k-1} (-1)^w C(2k,w) |c|_w^w |c|_{2k-w}^{2k-w}
//                                + (-1)^k / 2 C(2k,k) (|c|_k^k)^2 ]
//
// Odd order p = 2k+1:
//   S_2k+1 = gamma / (N |c|_2k+1^2k+1),
//   gamma  = sum_{w=0}^{k} (-1)^w C(2k+1,w) sum_i (c_i^{2k+1-w} f_w(i) - c_i^w f_{2k+1-w}(i))
//   f_w(i) = sum_{j<=i} c_j^w  (prefix power sums over the ascending order)
//
// Both numerators are identities over any ascending real sequence and only
// depend on pairwise differences, so they are evaluated on mean-centred
// coefficients in extended precision; the denominator keeps the raw values.

#ifndef GDS_SPARSITY_FAST_HPP_
#define GDS_SPARSITY_FAST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gds/sparsity_core.hpp"

namespace gds {

// sums()[w] = sum_i c_i^w for w = 0..max_exponent (w = 0 gives N).
class PowerSums {
 public:
  PowerSums(std::vector<double> sums) : sums_(std::move(sums)) {}

  int max_exponent() const noexcept { return static_cast<int>(sums_.size()) - 1; }
  double operator[](int w) const { return sums_[static_cast<std::size_t>(w)]; }
  std::span<const double> sums() const noexcept { return sums_; }

 private:
  std::vector<double> sums_;
};

// Power sums of the coefficients exactly as stored in `c` (no rescaling).
// Throws kBadOrder when max_exponent < 1.
PowerSums power_sums(const SignalVector& c, int max_exponent);
PowerSums power_sums(std::span<const double> values, int max_exponent);

// f_w(i) for i = 1..N over the ascending coefficients; f_0(i) = i.
// The last entry is bit-identical to power_sums(...)[w].
std::vector<double> prefix_power_sums(const SignalVector& c, int w);
std::vector<double> prefix_power_sums(std::span<const double> values, int w);

// Binomial coefficient as a double via the multiplicative recurrence.
double binomial(int n, int r) noexcept;

// p = 2k, k >= 1.
SparsityValue gds_even(const SignalVector& c, int k);
// p = 2k + 1, k >= 0.
SparsityValue gds_odd(const SignalVector& c, int k);

enum class EvalPath { kNaive, kEven, kOdd };
enum class Route { kAuto, kNaive, kFast };

std::string_view to_string(EvalPath path);

// Above this order the alternating binomial sums lose more digits than a
// double carries, so the automatic route stays on the pairwise definition.
inline constexpr int kMaxStableFastOrder = 24;

// Automatic routing: integer p, N > p/4 and p <= kMaxStableFastOrder use the
// closed forms; everything else uses the pairwise sum.
EvalPath select_path(std::size_t n, const SparsityOrder& order);

// Route::kFast on a non-integer order throws kBadOrder.
EvalPath resolve_path(std::size_t n, const SparsityOrder& order, Route route);

SparsityValue gds(const SignalVector& c, const SparsityOrder& order,
                  Route route = Route::kAuto);

enum class Formula { kNaive, kEven, kOdd };

std::string_view to_string(Formula formula);

struct OpCountReport {
  std::int64_t multiplications;
  std::int64_t additions;
  Formula formula;

  std::int64_t total() const noexcept { return multiplications + additions; }
};

// Operation counts of each evaluation route for an n-vector of order p.
// Throws kBadOrder when the parity of p does not match `formula`.
OpCountReport op_count(std::int64_t n, std::int64_t p, Formula formula);

}  // namespace gds

#endif  // GDS_SPARSITY_FAST_HPP_
