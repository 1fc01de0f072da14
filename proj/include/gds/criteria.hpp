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

// The eleven sparsity criteria (Continuity, Permutation Invariance, Robin Hood,
// Scaling, Rising Tide, Cloning, Bill Gates, Babies, Saturation, Lower Bound,
// Upper Bound) as vector transformations plus a randomized harness that checks
// any metric against them.

#ifndef GDS_CRITERIA_HPP_
#define GDS_CRITERIA_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gds/signals.hpp"
#include "gds/sparsity_core.hpp"
#include "gds/sparsity_fast.hpp"

namespace gds {

enum class Criterion {
  kContinuity,             // P1
  kPermutationInvariance,  // P2
  kRobinHood,              // P3
  kScaling,                // P4
  kRisingTide,             // P5
  kCloning,                // P6
  kBillGates,              // P7
  kBabies,                 // P8
  kSaturation,             // P9
  kLowerBound,             // P10
  kUpperBound,             // P11
};

inline constexpr std::array<Criterion, 11> kAllCriteria = {
    Criterion::kContinuity, Criterion::kPermutationInvariance, Criterion::kRobinHood,
    Criterion::kScaling,    Criterion::kRisingTide,            Criterion::kCloning,
    Criterion::kBillGates,  Criterion::kBabies,                Criterion::kSaturation,
    Criterion::kLowerBound, Criterion::kUpperBound};

// "P1" .. "P11".
std::string_view label(Criterion c);
std::string_view description(Criterion c);
// Accepts the "P<n>" label. Throws kBadConfig otherwise.
Criterion parse_criterion(std::string_view label);

// How S(after) must relate to S(before).
enum class Relation {
  kEqual,
  kStrictlyLess,
  kStrictlyGreater,
  kNotLess,
  kNotGreater,
  kBoundedChange,  // |S(after) - S(before)| <= bound
  kLimitRatioOne,  // |S(after) / S(before) - 1| <= bound
  kRatioApproaching,  // |S(after2)/S(after) - 1| <= |S(after)/S(before) - 1|
};

struct CriterionCase {
  Criterion criterion;
  SignalVector before;
  SignalVector after;
  Relation expected;
  double bound = 0.0;
  // Only for kRatioApproaching: the next vector of the saturation chain.
  std::vector<double> next;
};

struct CriterionReport {
  Criterion criterion;
  std::size_t trials = 0;
  std::size_t violations = 0;
  // Smallest slack observed; negative values measure the worst violation.
  double worst_margin = 0.0;
};

using Metric = std::function<double(const SignalVector&)>;

Metric gds_metric(const SparsityOrder& order, Route route = Route::kAuto);

// c_i + a and c_j - a on the sorted indices (0-based), re-sorted.
// Throws kBadTransfer unless c_j > c_i and 0 < a < (c_j - c_i) / 2.
SignalVector robin_hood(const SignalVector& c, std::size_t i, std::size_t j, double a);

// Adds a > 0 to every coefficient. Throws kBadShift for a <= 0.
SignalVector rising_tide(const SignalVector& c, double a);

// Multiplies every coefficient by a > 0. Throws kBadScale for a <= 0.
SignalVector scale(const SignalVector& c, double a);

// `copies` >= 2 concatenated copies. Throws kBadCount otherwise.
SignalVector clone_concat(const SignalVector& c, std::size_t copies);

// Adds a > 0 to sorted coefficient i. Throws kBadShift for a <= 0.
SignalVector bill_gates(const SignalVector& c, std::size_t i, double a);

// Appends one zero coefficient.
SignalVector babies(const SignalVector& c);

struct VerifyOptions {
  std::size_t min_length = 2;
  std::size_t max_length = 64;
  // Strict relations must hold by more than this.
  double strict_margin = 1e-12;
  double equal_tolerance = 1e-12;
  // Relative coordinate perturbation and the allowed change per unit of it.
  double continuity_epsilon = 1e-9;
  double continuity_lipschitz = 1e3;
  // Length used for the terminal saturation check, and its tolerance.
  std::size_t saturation_length = 10000;
  double saturation_tolerance = 2e-4;
  // Random saturation-chain lengths are drawn from [2, this].
  std::size_t saturation_random_max = 512;
  bool parallel = false;
};

// Random coefficient vector for the harness: length uniform in
// [min_length, max_length], K uniform in [1, N] non-zeros drawn from one of
// the four signal laws, or uniform magnitudes with ~30% zeros.
std::vector<double> random_case_vector(Rng& rng, std::size_t min_length,
                                       std::size_t max_length);

// One random legal case for the criterion.
CriterionCase make_case(Criterion criterion, Rng& rng, const VerifyOptions& options = {});

// Slack of the expected relation on this case; negative means violated.
double case_margin(const CriterionCase& cc, const Metric& metric,
                   const VerifyOptions& options = {});

// `trials` seeded cases per criterion, in kAllCriteria order.
std::vector<CriterionReport> verify_criteria(const Metric& metric, std::size_t trials,
                                             std::uint64_t seed,
                                             const VerifyOptions& options = {});

}  // namespace gds

#endif  // GDS_CRITERIA_HPP_
