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

#include "gds/sparsity_fast.hpp"

#include <algorithm>
#include <string>

#include "compensated.hpp"
#include "gds/error.hpp"

namespace gds {

namespace {

using detail::CompensatedSum;

// Shared by power_sums and prefix_power_sums so that f_w(N) and the total
// agree bit for bit.
std::vector<double> running_power_sum(std::span<const double> values, int w) {
  std::vector<double> prefix(values.size());
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc.add(ipow(values[i], w));
    prefix[i] = acc.value();
  }
  return prefix;
}

double sign_of(int w) { return (w % 2 == 0) ? 1.0 : -1.0; }

// Closed-form numerators are evaluated on mean-centred coefficients: the
// pairwise sum only sees differences, and centring keeps the alternating
// binomial terms from cancelling when the spread is small next to the level.
struct Centred {
  std::vector<long double> u;  // ascending, v_i - mean
  long double denom;           // N * sum_i v_i^p on the uncentred values
};

Centred centre(const std::vector<double>& v, int p) {
  CompensatedSum<long double> total;
  CompensatedSum<long double> norm;
  for (double x : v) {
    total.add(x);
    norm.add(static_cast<long double>(ipow(x, p)));
  }
  const long double mean = total.value() / static_cast<long double>(v.size());
  Centred out{std::vector<long double>(v.size()), static_cast<long double>(v.size()) * norm.value()};
  for (std::size_t i = 0; i < v.size(); ++i) out.u[i] = static_cast<long double>(v[i]) - mean;
  return out;
}

// sums[w] = sum_i u_i^w for w = 0..max_exponent.
std::vector<long double> wide_power_sums(const std::vector<long double>& u, int max_exponent) {
  std::vector<CompensatedSum<long double>> acc(static_cast<std::size_t>(max_exponent) + 1);
  for (long double x : u) {
    long double pw = 1.0L;
    for (auto& a : acc) {
      a.add(pw);
      pw *= x;
    }
  }
  std::vector<long double> sums(acc.size());
  for (std::size_t e = 0; e < acc.size(); ++e) sums[e] = acc[e].value();
  return sums;
}

}  // namespace

PowerSums power_sums(std::span<const double> values, int max_exponent) {
  if (max_exponent < 1) {
    throw Error(ErrorKind::kBadOrder, "power sums need max_exponent >= 1");
  }
  std::vector<double> sums(static_cast<std::size_t>(max_exponent) + 1);
  sums[0] = static_cast<double>(values.size());
  for (int w = 1; w <= max_exponent; ++w) {
    const auto prefix = running_power_sum(values, w);
    sums[static_cast<std::size_t>(w)] = prefix.empty() ? 0.0 : prefix.back();
  }
  return PowerSums(std::move(sums));
}

PowerSums power_sums(const SignalVector& c, int max_exponent) {
  return power_sums(c.coeffs(), max_exponent);
}

std::vector<double> prefix_power_sums(std::span<const double> values, int w) {
  if (w < 0) {
    throw Error(ErrorKind::kBadOrder, "prefix power sums need a nonnegative exponent");
  }
  return running_power_sum(values, w);
}

std::vector<double> prefix_power_sums(const SignalVector& c, int w) {
  return prefix_power_sums(c.coeffs(), w);
}

double binomial(int n, int r) noexcept {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double result = 1.0;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<double>(n - r + i) / static_cast<double>(i);
  }
  return result;
}

SparsityValue gds_even(const SignalVector& c, int k) {
  if (k < 1) {
    throw Error(ErrorKind::kBadOrder, "even formula needs k >= 1");
  }
  const int p = 2 * k;
  const std::vector<double> v = c.max_normalized();
  const Centred cv = centre(v, p);
  const std::vector<long double> sums = wide_power_sums(cv.u, p);
  const auto at = [&](int w) { return sums[static_cast<std::size_t>(w)]; };

  CompensatedSum<long double> num;
  num.add(at(0) * at(p));
  for (int w = 1; w <= k - 1; ++w) {
    num.add(static_cast<long double>(sign_of(w) * binomial(p, w)) * at(w) * at(p - w));
  }
  num.add(static_cast<long double>(sign_of(k) * 0.5 * binomial(p, k)) * at(k) * at(k));

  const double value = static_cast<double>(num.value() / cv.denom);
  return {std::max(0.0, value), SparsityOrder(p), v.size()};
}

SparsityValue gds_odd(const SignalVector& c, int k) {
  if (k < 0) {
    throw Error(ErrorKind::kBadOrder, "odd formula needs k >= 0");
  }
  const int p = 2 * k + 1;
  const std::vector<double> v = c.max_normalized();
  const Centred cv = centre(v, p);
  const auto up = static_cast<std::size_t>(p);

  std::vector<long double> pw(up + 1);
  std::vector<CompensatedSum<long double>> prefix(up + 1);
  std::vector<CompensatedSum<long double>> inner(static_cast<std::size_t>(k) + 1);

  for (long double x : cv.u) {
    pw[0] = 1.0L;
    for (std::size_t e = 1; e <= up; ++e) pw[e] = pw[e - 1] * x;
    for (std::size_t e = 0; e <= up; ++e) prefix[e].add(pw[e]);
    for (std::size_t w = 0; w < inner.size(); ++w) {
      inner[w].add(pw[up - w] * prefix[w].value() - pw[w] * prefix[up - w].value());
    }
  }

  CompensatedSum<long double> gamma;
  for (int w = 0; w <= k; ++w) {
    gamma.add(static_cast<long double>(sign_of(w) * binomial(p, w)) *
              inner[static_cast<std::size_t>(w)].value());
  }
  const double value = static_cast<double>(gamma.value() / cv.denom);
  return {std::max(0.0, value), SparsityOrder(p), v.size()};
}

std::string_view to_string(EvalPath path) {
  switch (path) {
    case EvalPath::kNaive: return "naive";
    case EvalPath::kEven: return "even";
    case EvalPath::kOdd: return "odd";
  }
  return "unknown";
}

EvalPath select_path(std::size_t n, const SparsityOrder& order) {
  if (!order.is_integer() || order.integer_p() > kMaxStableFastOrder) {
    return EvalPath::kNaive;
  }
  const int p = order.integer_p();
  // N > p/4, ties to the pairwise sum.
  if (4 * static_cast<long long>(n) <= p) return EvalPath::kNaive;
  return (p % 2 == 0) ? EvalPath::kEven : EvalPath::kOdd;
}

EvalPath resolve_path(std::size_t n, const SparsityOrder& order, Route route) {
  switch (route) {
    case Route::kAuto:
      return select_path(n, order);
    case Route::kNaive:
      return EvalPath::kNaive;
    case Route::kFast:
      if (!order.is_integer()) {
        throw Error(ErrorKind::kBadOrder, "closed forms need an integer order");
      }
      return order.is_even() ? EvalPath::kEven : EvalPath::kOdd;
  }
  return EvalPath::kNaive;
}

SparsityValue gds(const SignalVector& c, const SparsityOrder& order, Route route) {
  switch (resolve_path(c.size(), order, route)) {
    case EvalPath::kEven:
      return gds_even(c, *order.parity_k());
    case EvalPath::kOdd:
      return gds_odd(c, *order.parity_k());
    case EvalPath::kNaive:
      break;
  }
  return gds_naive(c, order);
}

std::string_view to_string(Formula formula) {
  switch (formula) {
    case Formula::kNaive: return "naive";
    case Formula::kEven: return "even";
    case Formula::kOdd: return "odd";
  }
  return "unknown";
}

OpCountReport op_count(std::int64_t n, std::int64_t p, Formula formula) {
  if (n < 1 || p < 1) {
    throw Error(ErrorKind::kBadOrder, "op_count needs n >= 1 and p >= 1");
  }
  // Counts are floored at zero: the closed expressions go negative for n = 1.
  auto floor0 = [](std::int64_t v) { return std::max<std::int64_t>(0, v); };
  switch (formula) {
    case Formula::kNaive:
      return {floor0((p - 1) * n * (n + 1) / 2), floor0(n * n - 2), formula};
    case Formula::kEven: {
      if (p % 2 != 0) {
        throw Error(ErrorKind::kBadOrder, "even formula needs even p, got " + std::to_string(p));
      }
      const std::int64_t k = p / 2;
      return {floor0(k * k * (2 * n + 1) - k * n - k), floor0(2 * k * n - k + 2), formula};
    }
    case Formula::kOdd: {
      if (p % 2 != 1) {
        throw Error(ErrorKind::kBadOrder, "odd formula needs odd p, got " + std::to_string(p));
      }
      const std::int64_t k = (p - 1) / 2;
      return {floor0(4 * k * k * n + 6 * k * n + k * k - k + n - 2),
              floor0((2 * k + 5) * n - k - 4), formula};
    }
  }
  throw Error(ErrorKind::kBadOrder, "unknown formula");
}

}  // namespace gds
