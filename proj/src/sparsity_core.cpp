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

#include "gds/sparsity_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gds/error.hpp"

namespace gds {

SignalVector::SignalVector(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  std::sort(coeffs_.begin(), coeffs_.end());
  sorted_ = true;
}

SignalVector SignalVector::from_raw(std::span<const double> raw) {
  if (raw.empty()) {
    throw Error(ErrorKind::kEmptyVector, "signal must have at least one coefficient");
  }
  std::vector<double> mags(raw.size());
  std::transform(raw.begin(), raw.end(), mags.begin(),
                 [](double v) { return std::fabs(v); });
  return SignalVector(std::move(mags));
}

std::vector<double> SignalVector::max_normalized() const {
  if (!has_positive()) {
    throw Error(ErrorKind::kZeroVector, "sparsity of the all-zero vector is undefined");
  }
  const double top = max();
  std::vector<double> out(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), out.begin(),
                 [top](double v) { return v / top; });
  return out;
}

SignalVector make_signal(std::span<const double> raw) {
  return SignalVector::from_raw(raw);
}

SparsityOrder::SparsityOrder(double p) : p_(p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw Error(ErrorKind::kBadOrder, "order must be a finite real >= 1, got " + std::to_string(p));
  }
  if (std::floor(p) == p && p <= 1e9) {
    parity_k_ = static_cast<int>(p) / 2;
  }
}

double ipow(double x, int e) noexcept {
  double result = 1.0;
  double base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

SparsityValue gds_naive(const SignalVector& c, const SparsityOrder& order) {
  const std::vector<double> v = c.max_normalized();
  const std::size_t n = v.size();
  const bool integral = order.is_integer();
  const int ip = order.integer_p();
  const double p = order.p();
  auto power = [&](double x) { return integral ? ipow(x, ip) : std::pow(x, p); };

  long double denom = 0.0L;
  for (double x : v) denom += power(x);

  // Row sums are accumulated in double; rows are combined in extended precision.
  long double pairs = 0.0L;
  for (std::size_t j = 1; j < n; ++j) {
    const double cj = v[j];
    double row = 0.0;
    for (std::size_t i = 0; i < j; ++i) row += power(cj - v[i]);
    pairs += row;
  }
  const double value = static_cast<double>(pairs / (static_cast<long double>(n) * denom));
  return {value, order, n};
}

SparsityValue gini_index(const SignalVector& c) {
  const std::vector<double> v = c.max_normalized();
  const std::size_t n = v.size();
  const double dn = static_cast<double>(n);
  long double l1 = 0.0L;
  for (double x : v) l1 += x;
  long double weighted = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const double rank = static_cast<double>(i + 1);
    weighted += static_cast<long double>(v[i]) * ((dn - rank + 0.5) / dn);
  }
  const double value = static_cast<double>(1.0L - 2.0L * weighted / l1);
  return {value, SparsityOrder(1.0), n};
}

std::pair<double, double> sparsity_bounds(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorKind::kEmptyVector, "bounds need n >= 1");
  }
  return {0.0, 1.0 - 1.0 / static_cast<double>(n)};
}

}  // namespace gds
