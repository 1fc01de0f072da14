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

#ifndef GDS_SIGNALS_HPP_
#define GDS_SIGNALS_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace gds {

using Rng = std::mt19937_64;

// Laws for the non-zero magnitudes of synthetic sparse signals.
//   binomial    -> 1 (Bernoulli magnitudes, a flat nonzero plateau)
//   uniform     -> U(0, 1]
//   normal      -> |N(0, 1)|
//   exponential -> Exp(1)
enum class Distribution { kBinomial, kUniform, kNormal, kExponential };

inline constexpr std::array<Distribution, 4> kAllDistributions = {
    Distribution::kBinomial, Distribution::kUniform, Distribution::kNormal,
    Distribution::kExponential};

std::string_view to_string(Distribution d);
// Throws kBadConfig on an unknown name.
Distribution parse_distribution(std::string_view name);

// One strictly positive draw.
double draw_magnitude(Distribution d, Rng& rng);

// SplitMix64 finalizer; mixes a base seed with a list of cell coordinates.
std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

struct SignalSpec {
  std::size_t n = 100;
  double k_fraction = 0.1;
  Distribution distribution = Distribution::kNormal;
  std::uint64_t seed = 0;

  // round(k_fraction * n).
  std::size_t nonzeros() const noexcept;
};

// Exactly K non-zeros at uniformly random positions, deterministic per seed.
// Throws kDegenerateSignal when K = 0 and kBadShape when K > n.
std::vector<double> generate_signal(const SignalSpec& spec);

}  // namespace gds

#endif  // GDS_SIGNALS_HPP_
