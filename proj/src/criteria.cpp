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

#include "gds/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <string>

#include "gds/error.hpp"

namespace gds {

namespace {

std::vector<double> to_vec(const SignalVector& c) {
  return {c.coeffs().begin(), c.coeffs().end()};
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> d(lo, hi);
  return d(rng);
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

std::vector<double> saturation_vector(std::size_t zeros) {
  std::vector<double> v(zeros + 1, 0.0);
  v.back() = 1.0;
  return v;
}

// Positive vector with min >= 0.01 * max.
std::vector<double> well_conditioned_vector(Rng& rng, const VerifyOptions& o) {
  const std::size_t n = uniform_index(rng, o.min_length, o.max_length);
  const Distribution d = kAllDistributions[uniform_index(rng, 0, 3)];
  std::vector<double> v(n);
  for (double& x : v) x = draw_magnitude(d, rng);
  const double floor = 0.01 * *std::max_element(v.begin(), v.end());
  for (double& x : v) x = std::max(x, floor);
  return v;
}

}  // namespace

std::string_view label(Criterion c) {
  static constexpr std::array<std::string_view, 11> kLabels = {
      "P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10", "P11"};
  return kLabels[static_cast<std::size_t>(c)];
}

std::string_view description(Criterion c) {
  static constexpr std::array<std::string_view, 11> kNames = {
      "Continuity", "Permutation Invariance", "Robin Hood", "Scaling",
      "Rising Tide", "Cloning", "Bill Gates", "Babies",
      "Saturation", "Lower Bound", "Upper Bound"};
  return kNames[static_cast<std::size_t>(c)];
}

Criterion parse_criterion(std::string_view text) {
  for (Criterion c : kAllCriteria) {
    if (label(c) == text) return c;
  }
  throw Error(ErrorKind::kBadConfig, "unknown criterion '" + std::string(text) + "'");
}

Metric gds_metric(const SparsityOrder& order, Route route) {
  return [order, route](const SignalVector& c) { return gds(c, order, route).value; };
}

SignalVector robin_hood(const SignalVector& c, std::size_t i, std::size_t j, double a) {
  if (i >= c.size() || j >= c.size()) {
    throw Error(ErrorKind::kBadTransfer, "transfer index out of range");
  }
  const double gap = c[j] - c[i];
  if (!(gap > 0.0)) {
    throw Error(ErrorKind::kBadTransfer, "transfer needs c_j > c_i");
  }
  if (!(a > 0.0) || !(a < gap / 2.0)) {
    throw Error(ErrorKind::kBadTransfer, "transfer amount must lie in (0, (c_j - c_i) / 2)");
  }
  std::vector<double> v = to_vec(c);
  v[i] += a;
  v[j] -= a;
  return make_signal(v);
}

SignalVector rising_tide(const SignalVector& c, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::kBadShift, "rising tide needs a > 0");
  std::vector<double> v = to_vec(c);
  for (double& x : v) x += a;
  return make_signal(v);
}

SignalVector scale(const SignalVector& c, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::kBadScale, "scale factor must be > 0");
  std::vector<double> v = to_vec(c);
  for (double& x : v) x *= a;
  return make_signal(v);
}

SignalVector clone_concat(const SignalVector& c, std::size_t copies) {
  if (copies < 2) throw Error(ErrorKind::kBadCount, "cloning needs at least 2 copies");
  std::vector<double> v;
  v.reserve(c.size() * copies);
  for (std::size_t r = 0; r < copies; ++r) v.insert(v.end(), c.coeffs().begin(), c.coeffs().end());
  return make_signal(v);
}

SignalVector bill_gates(const SignalVector& c, std::size_t i, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::kBadShift, "increment must be > 0");
  if (i >= c.size()) throw Error(ErrorKind::kBadShape, "coefficient index out of range");
  std::vector<double> v = to_vec(c);
  v[i] += a;
  return make_signal(v);
}

SignalVector babies(const SignalVector& c) {
  std::vector<double> v = to_vec(c);
  v.push_back(0.0);
  return make_signal(v);
}

std::vector<double> random_case_vector(Rng& rng, std::size_t min_length, std::size_t max_length) {
  const std::size_t n = uniform_index(rng, min_length, max_length);
  std::vector<double> v(n, 0.0);
  const std::size_t family = uniform_index(rng, 0, 4);
  if (family == 4) {
    for (double& x : v) {
      if (uniform(rng, 0.0, 1.0) >= 0.3) x = draw_magnitude(Distribution::kUniform, rng);
    }
    if (*std::max_element(v.begin(), v.end()) == 0.0) {
      v[uniform_index(rng, 0, n - 1)] = draw_magnitude(Distribution::kUniform, rng);
    }
    return v;
  }
  const Distribution d = kAllDistributions[family];
  const std::size_t k = uniform_index(rng, 1, n);
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::shuffle(pos.begin(), pos.end(), rng);
  for (std::size_t t = 0; t < k; ++t) v[pos[t]] = draw_magnitude(d, rng);
  return v;
}

CriterionCase make_case(Criterion criterion, Rng& rng, const VerifyOptions& o) {
  auto random_signal = [&] { return make_signal(random_case_vector(rng, o.min_length, o.max_length)); };

  switch (criterion) {
    case Criterion::kContinuity: {
      const std::vector<double> v = well_conditioned_vector(rng, o);
      std::vector<double> w = v;
      for (double& x : w) x *= 1.0 + uniform(rng, -o.continuity_epsilon, o.continuity_epsilon);
      return {criterion, make_signal(v), make_signal(w), Relation::kBoundedChange,
              o.continuity_lipschitz * o.continuity_epsilon, {}};
    }
    case Criterion::kPermutationInvariance: {
      std::vector<double> v = random_case_vector(rng, o.min_length, o.max_length);
      std::vector<double> w = v;
      std::shuffle(w.begin(), w.end(), rng);
      // Signs are discarded by the magnitude convention.
      for (double& x : w) {
        if (uniform(rng, 0.0, 1.0) < 0.5) x = -x;
      }
      return {criterion, make_signal(v), make_signal(w), Relation::kEqual, o.equal_tolerance, {}};
    }
    case Criterion::kRobinHood: {
      for (;;) {
        SignalVector c = random_signal();
        const double top = c.max();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t j = 0; j < c.size(); ++j) {
          for (std::size_t i = 0; i < j; ++i) {
            if (c[j] - c[i] >= 0.1 * top) pairs.emplace_back(i, j);
          }
        }
        if (pairs.empty()) continue;
        const auto [i, j] = pairs[uniform_index(rng, 0, pairs.size() - 1)];
        const double a = uniform(rng, 0.1, 0.9) * (c[j] - c[i]) / 2.0;
        SignalVector after = robin_hood(c, i, j, a);
        return {criterion, std::move(c), std::move(after), Relation::kStrictlyLess, o.strict_margin, {}};
      }
    }
    case Criterion::kScaling: {
      SignalVector c = random_signal();
      const double a = std::pow(10.0, uniform(rng, -3.0, 3.0));
      SignalVector after = scale(c, a);
      return {criterion, std::move(c), std::move(after), Relation::kEqual, o.equal_tolerance, {}};
    }
    case Criterion::kRisingTide: {
      if (uniform(rng, 0.0, 1.0) < 0.05) {
        const std::size_t n = uniform_index(rng, o.min_length, o.max_length);
        SignalVector c = make_signal(std::vector<double>(n, uniform(rng, 0.1, 10.0)));
        SignalVector after = rising_tide(c, uniform(rng, 0.01, 10.0));
        return {criterion, std::move(c), std::move(after), Relation::kEqual, o.equal_tolerance, {}};
      }
      SignalVector c = random_signal();
      // A spread of at least 10% of the peak keeps the decrease above the
      // strictness margin at high orders.
      while (c.max() - c.coeffs().front() < 0.1 * c.max()) c = random_signal();
      SignalVector after = rising_tide(c, uniform(rng, 0.01, 1.0) * c.max());
      return {criterion, std::move(c), std::move(after), Relation::kStrictlyLess, o.strict_margin, {}};
    }
    case Criterion::kCloning: {
      SignalVector c = random_signal();
      SignalVector after = clone_concat(c, uniform_index(rng, 2, 4));
      return {criterion, std::move(c), std::move(after), Relation::kEqual, o.equal_tolerance, {}};
    }
    case Criterion::kBillGates: {
      // Coefficient i is first lifted to the current maximum (the beta_i
      // offset), then grown further by a > 0. A single non-zero already sits
      // at the upper bound and cannot grow sparser, so it is redrawn.
      SignalVector before = make_signal(std::vector<double>{1.0});
      do {
        const SignalVector c = random_signal();
        const std::size_t i = uniform_index(rng, 0, c.size() - 1);
        std::vector<double> lifted = to_vec(c);
        lifted[i] = c.max();
        before = make_signal(lifted);
      } while (before.size() < 2 || before[before.size() - 2] == 0.0);
      // Ties at the peak make the gain O(a^p); a >= 10% of the peak keeps it
      // above the strictness margin.
      SignalVector after = bill_gates(before, before.size() - 1, uniform(rng, 0.1, 1.0) * before.max());
      return {criterion, std::move(before), std::move(after), Relation::kStrictlyGreater,
              o.strict_margin, {}};
    }
    case Criterion::kBabies: {
      SignalVector c = random_signal();
      SignalVector after = babies(c);
      return {criterion, std::move(c), std::move(after), Relation::kStrictlyGreater, o.strict_margin, {}};
    }
    case Criterion::kSaturation: {
      const std::size_t n = uniform_index(rng, 2, std::max<std::size_t>(2, o.saturation_random_max));
      return {criterion, make_signal(saturation_vector(n - 1)), make_signal(saturation_vector(n)),
              Relation::kRatioApproaching, o.equal_tolerance, saturation_vector(n + 1)};
    }
    case Criterion::kLowerBound: {
      SignalVector c = random_signal();
      SignalVector ones = make_signal(std::vector<double>(c.size(), 1.0));
      return {criterion, std::move(ones), std::move(c), Relation::kNotLess, o.equal_tolerance, {}};
    }
    case Criterion::kUpperBound: {
      SignalVector c = random_signal();
      SignalVector top = make_signal(saturation_vector(c.size() - 1));
      return {criterion, std::move(top), std::move(c), Relation::kNotGreater, o.equal_tolerance, {}};
    }
  }
  throw Error(ErrorKind::kBadConfig, "unknown criterion");
}

double case_margin(const CriterionCase& cc, const Metric& metric, const VerifyOptions& o) {
  const double before = metric(cc.before);
  const double after = metric(cc.after);
  switch (cc.expected) {
    case Relation::kEqual:
    case Relation::kBoundedChange:
      return cc.bound - std::fabs(after - before);
    case Relation::kStrictlyLess:
      return (before - after) - cc.bound;
    case Relation::kStrictlyGreater:
      return (after - before) - cc.bound;
    case Relation::kNotLess:
      return (after - before) + cc.bound;
    case Relation::kNotGreater:
      return (before - after) + cc.bound;
    case Relation::kLimitRatioOne:
      return cc.bound - std::fabs(after / before - 1.0);
    case Relation::kRatioApproaching: {
      const double next = metric(make_signal(cc.next));
      const double r1 = std::fabs(after / before - 1.0);
      const double r2 = std::fabs(next / after - 1.0);
      return (r1 - r2) + o.equal_tolerance;
    }
  }
  return -std::numeric_limits<double>::infinity();
}

namespace {

CriterionReport run_criterion(Criterion criterion, const Metric& metric, std::size_t trials,
                              std::uint64_t seed, const VerifyOptions& o) {
  Rng rng(mix_seed(seed, {static_cast<std::uint64_t>(criterion)}));
  CriterionReport report{criterion, 0, 0, std::numeric_limits<double>::infinity()};
  auto record = [&](double margin) {
    ++report.trials;
    // NaN margins count as violations.
    if (!(margin >= 0.0)) ++report.violations;
    if (!(margin >= report.worst_margin)) report.worst_margin = margin;
  };

  std::size_t first = 0;
  if (criterion == Criterion::kSaturation && trials > 0) {
    // Terminal check at the configured length.
    const std::size_t n = o.saturation_length;
    const CriterionCase terminal{criterion, make_signal(saturation_vector(n - 1)),
                                 make_signal(saturation_vector(n)), Relation::kLimitRatioOne,
                                 o.saturation_tolerance, {}};
    record(case_margin(terminal, metric, o));
    first = 1;
  }
  for (std::size_t t = first; t < trials; ++t) {
    record(case_margin(make_case(criterion, rng, o), metric, o));
  }
  return report;
}

}  // namespace

std::vector<CriterionReport> verify_criteria(const Metric& metric, std::size_t trials,
                                             std::uint64_t seed, const VerifyOptions& o) {
  if (trials < 1) throw Error(ErrorKind::kBadCount, "verification needs at least one trial");
  std::vector<CriterionReport> reports;
  reports.reserve(kAllCriteria.size());
  if (o.parallel) {
    std::vector<std::future<CriterionReport>> jobs;
    for (Criterion c : kAllCriteria) {
      jobs.push_back(std::async(std::launch::async, run_criterion, c, std::cref(metric), trials,
                                seed, std::cref(o)));
    }
    for (auto& j : jobs) reports.push_back(j.get());
  } else {
    for (Criterion c : kAllCriteria) reports.push_back(run_criterion(c, metric, trials, seed, o));
  }
  return reports;
}

}  // namespace gds
