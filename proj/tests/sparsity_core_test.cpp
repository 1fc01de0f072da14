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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gds/criteria.hpp"
#include "gds/error.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace gds {
namespace {

using testing::expect_error;

std::vector<double> coeffs_of(const SignalVector& c) { return {c.coeffs().begin(), c.coeffs().end()}; }

// ==================== make_signal ====================

TEST(MakeSignal, TakesMagnitudesAndSorts) {
  const SignalVector c = make_signal(std::vector<double>{3, -1, 2});
  EXPECT_EQ(coeffs_of(c), (std::vector<double>{1, 2, 3}));
  EXPECT_TRUE(c.sorted());
}

TEST(MakeSignal, ZerosAndSingletons) {
  EXPECT_EQ(coeffs_of(make_signal(std::vector<double>{0, 0, 0})), (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(coeffs_of(make_signal(std::vector<double>{-5})), (std::vector<double>{5}));
}

TEST(MakeSignal, EmptyInputIsRejected) {
  expect_error(ErrorKind::kEmptyVector, [] { make_signal(std::vector<double>{}); });
}

// ==================== SparsityOrder ====================

TEST(SparsityOrder, ParityOfIntegerOrders) {
  EXPECT_EQ(SparsityOrder(1).parity_k(), 0);
  EXPECT_EQ(SparsityOrder(4).parity_k(), 2);
  EXPECT_EQ(SparsityOrder(7).parity_k(), 3);
  EXPECT_TRUE(SparsityOrder(4).is_even());
  EXPECT_FALSE(SparsityOrder(2.5).parity_k().has_value());
}

TEST(SparsityOrder, RejectsOrdersBelowOne) {
  expect_error(ErrorKind::kBadOrder, [] { SparsityOrder(0.5); });
  expect_error(ErrorKind::kBadOrder, [] { SparsityOrder(std::nan("")); });
}

// ==================== gds_naive ====================

TEST(GdsNaive, HandEnumeratedValues) {
  const SignalVector c = make_signal(std::vector<double>{1, 2, 3});
  EXPECT_NEAR(gds_naive(c, SparsityOrder(1)).value, 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(gds_naive(c, SparsityOrder(2)).value, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(gds_naive(c, SparsityOrder(3)).value, 5.0 / 54.0, 1e-15);
  EXPECT_NEAR(gds_naive(c, SparsityOrder(4)).value, 3.0 / 49.0, 1e-15);
}

TEST(GdsNaive, ConstantVectorIsZero) {
  for (double q : {0.001, 1.0, 42.0}) {
    for (double p : {1.0, 2.0, 3.5, 10.0}) {
      EXPECT_EQ(gds_naive(make_signal(std::vector<double>(4, q)), SparsityOrder(p)).value, 0.0);
    }
  }
}

TEST(GdsNaive, SingleSpikeAttainsUpperBound) {
  for (double p : {1.0, 2.0, 2.5, 7.0, 50.0}) {
    EXPECT_NEAR(gds_naive(make_signal(std::vector<double>{0, 0, 0, 1}), SparsityOrder(p)).value, 0.75, 1e-15);
  }
}

TEST(GdsNaive, SingleCoefficientIsZero) {
  const SparsityValue v = gds_naive(make_signal(std::vector<double>{3.0}), SparsityOrder(2));
  EXPECT_EQ(v.value, 0.0);
  EXPECT_EQ(v.n, 1u);
}

TEST(GdsNaive, AllZeroVectorIsRejected) {
  expect_error(ErrorKind::kZeroVector,
               [] { gds_naive(make_signal(std::vector<double>{0, 0, 0}), SparsityOrder(1)); });
}

TEST(GdsNaive, LargeOrderDoesNotOverflow) {
  const SignalVector c = make_signal(std::vector<double>{1e200, 2e200, 5e200});
  const double v = gds_naive(c, SparsityOrder(300)).value;
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
}

TEST(GdsNaive, MatchesBruteForceOracleOnRandomVectors) {
  Rng rng(11);
  std::uniform_real_distribution<double> order(1.0, 9.0);
  for (int t = 0; t < 300; ++t) {
    const auto raw = random_case_vector(rng, 2, 80);
    const double p = (t % 2 == 0) ? std::round(order(rng)) : order(rng);
    const double got = gds_naive(make_signal(raw), SparsityOrder(p)).value;
    const long double want = testing::brute_force_gds(raw, p);
    EXPECT_NEAR(got, static_cast<double>(want), 1e-13 * std::max(1.0L, want)) << "p=" << p;
  }
}

// ==================== gini_index ====================

TEST(GiniIndex, HandEvaluatedValues) {
  EXPECT_NEAR(gini_index(make_signal(std::vector<double>{1, 2, 3})).value, 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(gini_index(make_signal(std::vector<double>{1, 1, 1, 1})).value, 0.0, 1e-15);
  EXPECT_NEAR(gini_index(make_signal(std::vector<double>{0, 0, 0, 1})).value, 0.75, 1e-15);
}

TEST(GiniIndex, AllZeroVectorIsRejected) {
  expect_error(ErrorKind::kZeroVector, [] { gini_index(make_signal(std::vector<double>{0, 0})); });
}

// ==================== sparsity_bounds ====================

TEST(SparsityBounds, Formula) {
  EXPECT_EQ(sparsity_bounds(2), std::make_pair(0.0, 0.5));
  EXPECT_EQ(sparsity_bounds(100), std::make_pair(0.0, 0.99));
  EXPECT_EQ(sparsity_bounds(1), std::make_pair(0.0, 0.0));
  expect_error(ErrorKind::kEmptyVector, [] { sparsity_bounds(0); });
}

// ==================== properties ====================

TEST(GdsProperties, RangeHoldsForRandomVectorsAndOrders) {
  Rng rng(3);
  std::uniform_real_distribution<double> order(1.0, 12.0);
  for (int t = 0; t < 500; ++t) {
    const SignalVector c = make_signal(random_case_vector(rng, 1, 60));
    const double v = gds_naive(c, SparsityOrder(order(rng))).value;
    const auto [lo, hi] = sparsity_bounds(c.size());
    EXPECT_GE(v, lo - 1e-12);
    EXPECT_LE(v, hi + 1e-12);
  }
}

TEST(GdsProperties, FirstOrderEqualsGiniIndex) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const SignalVector c = make_signal(random_case_vector(rng, 2, 200));
    const double s1 = gds_naive(c, SparsityOrder(1)).value;
    const double gi = gini_index(c).value;
    EXPECT_LE(std::fabs(s1 - gi), 1e-12 * std::max(std::fabs(gi), 1e-3));
  }
}

TEST(GdsProperties, SaturationClosedForm) {
  for (std::size_t zeros : {1u, 2u, 9u, 63u, 500u}) {
    std::vector<double> v(zeros + 1, 0.0);
    v.back() = 1.0;
    for (double p : {1.0, 2.0, 3.3, 7.0}) {
      const double expected = static_cast<double>(zeros) / static_cast<double>(zeros + 1);
      EXPECT_NEAR(gds_naive(make_signal(v), SparsityOrder(p)).value, expected, 1e-14);
    }
  }
}

TEST(GdsProperties, OrderMonotonicityFailsOnPositiveVectors) {
  // Raising p shrinks both the pairwise sum and the non-peak part of the
  // denominator, so S_p can grow with p even when every coefficient is
  // positive. Hand values: S_1 = 2.7 / 5.2, S_2 = 2.43 / 4.12.
  const SignalVector c = make_signal(std::vector<double>{0.1, 0.1, 0.1, 1.0});
  const double s1 = gds_naive(c, SparsityOrder(1)).value;
  const double s2 = gds_naive(c, SparsityOrder(2)).value;
  EXPECT_NEAR(s1, 2.7 / 5.2, 1e-15);
  EXPECT_NEAR(s2, 2.43 / 4.12, 1e-15);
  EXPECT_GT(s2, s1);
  EXPECT_NEAR(s2, static_cast<double>(testing::brute_force_gds({0.1, 0.1, 0.1, 1.0}, 2)), 1e-15);
}

TEST(GdsProperties, DecreasingInOrderForFlatPositiveVectors) {
  // With every coefficient in [c_N / 2, c_N] the chain over p = 1..10 holds.
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(2 + t % 30);
    for (double& x : v) x = u(rng);
    v[0] = 1.0;
    const SignalVector c = make_signal(v);
    double prev = gds_naive(c, SparsityOrder(1)).value;
    for (int p = 2; p <= 10; ++p) {
      const double cur = gds_naive(c, SparsityOrder(p)).value;
      EXPECT_LT(cur, prev) << "p=" << p;
      prev = cur;
    }
  }
}

TEST(GdsProperties, ZeroContainingVectorIsNotStrictlyMonotone) {
  // [0, 1] scores 1/2 at every order; the limit theorem needs min(c) > 0.
  const SignalVector c = make_signal(std::vector<double>{0, 1});
  for (double p : {1.0, 2.0, 10.0, 200.0}) {
    EXPECT_NEAR(gds_naive(c, SparsityOrder(p)).value, 0.5, 1e-15);
  }
}

TEST(GdsProperties, LargeOrderLimitOnPositiveVectors) {
  Rng rng(23);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(2 + t % 40);
    for (double& x : v) x = u(rng);
    v[0] = 1.0;  // min/max ratio stays >= 0.1
    EXPECT_LT(gds_naive(make_signal(v), SparsityOrder(200)).value, 1e-6);
  }
}

TEST(GdsProperties, PermutationInvariance) {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    auto raw = random_case_vector(rng, 2, 40);
    const double before = gds_naive(make_signal(raw), SparsityOrder(2.7)).value;
    std::shuffle(raw.begin(), raw.end(), rng);
    raw[0] = -raw[0];
    EXPECT_EQ(gds_naive(make_signal(raw), SparsityOrder(2.7)).value, before);
  }
}

}  // namespace
}  // namespace gds
