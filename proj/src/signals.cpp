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

#include "gds/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gds/error.hpp"

namespace gds {

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kBinomial: return "binomial";
    case Distribution::kUniform: return "uniform";
    case Distribution::kNormal: return "normal";
    case Distribution::kExponential: return "exponential";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  for (Distribution d : kAllDistributions) {
    if (to_string(d) == name) return d;
  }
  throw Error(ErrorKind::kBadConfig, "unknown distribution '" + std::string(name) + "'");
}

double draw_magnitude(Distribution d, Rng& rng) {
  switch (d) {
    case Distribution::kBinomial:
      return 1.0;
    case Distribution::kUniform: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return 1.0 - u(rng);
    }
    case Distribution::kNormal: {
      std::normal_distribution<double> g(0.0, 1.0);
      double v = 0.0;
      while (v == 0.0) v = std::fabs(g(rng));
      return v;
    }
    case Distribution::kExponential: {
      std::exponential_distribution<double> e(1.0);
      double v = 0.0;
      while (v == 0.0) v = e(rng);
      return v;
    }
  }
  return 1.0;
}

std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = splitmix(base);
  for (std::uint64_t part : parts) h = splitmix(h ^ splitmix(part));
  return h;
}

std::size_t SignalSpec::nonzeros() const noexcept {
  return static_cast<std::size_t>(std::llround(k_fraction * static_cast<double>(n)));
}

std::vector<double> generate_signal(const SignalSpec& spec) {
  const std::size_t k = spec.nonzeros();
  if (k == 0) {
    throw Error(ErrorKind::kDegenerateSignal, "signal spec yields no non-zero coefficients");
  }
  if (k > spec.n || !(spec.k_fraction > 0.0)) {
    throw Error(ErrorKind::kBadShape, "k_fraction must lie in (0, 1]");
  }
  Rng rng(spec.seed);
  std::vector<std::size_t> positions(spec.n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::shuffle(positions.begin(), positions.end(), rng);

  std::vector<double> x(spec.n, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    x[positions[i]] = draw_magnitude(spec.distribution, rng);
  }
  return x;
}

}  // namespace gds
