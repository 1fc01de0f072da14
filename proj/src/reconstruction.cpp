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

#include "gds/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "gds/error.hpp"
#include "gds/signals.hpp"

namespace gds {

ProjectionSetup gaussian_projection(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  if (m < 1 || n < 1 || m > n) {
    throw Error(ErrorKind::kBadShape, "projection needs 1 <= M <= N, got M=" + std::to_string(m) +
                                          " N=" + std::to_string(n));
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(mix_seed(seed, {attempt}));
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd a(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
    if (qr.rank() == m) return {std::move(a), seed};
  }
}

FeasibleParametrization parametrize_feasible(const ProjectionSetup& setup,
                                             const Eigen::VectorXd& y) {
  const Eigen::Index m = setup.rows();
  const Eigen::Index n = setup.cols();
  if (y.size() != m) {
    throw Error(ErrorKind::kBadShape, "measurement length " + std::to_string(y.size()) +
                                          " does not match M=" + std::to_string(m));
  }
  // A^T P = Q R: the first M columns of Q span the row space of A, the rest
  // its null space.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(setup.matrix.transpose());
  if (qr.rank() < m) {
    throw Error(ErrorKind::kDegenerateProjection,
                "projection rank " + std::to_string(qr.rank()) + " < M=" + std::to_string(m));
  }
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::VectorXd py = qr.colsPermutation().transpose() * y;
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(m, m);
  const Eigen::VectorXd w = r.triangularView<Eigen::Upper>().transpose().solve(py);

  FeasibleParametrization fp;
  fp.x_min = q.leftCols(m) * w;
  fp.null_basis = q.rightCols(n - m);
  return fp;
}

void SpsaConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kBadConfig, what); };
  if (iterations < 1) fail("spsa iterations must be >= 1");
  if (restarts < 1) fail("spsa restarts must be >= 1");
  if (!(restart_spread >= 0.0) || !std::isfinite(restart_spread)) fail("spsa restart_spread must be >= 0");
  if (!(alpha > 0.5 && alpha <= 1.0)) fail("spsa alpha must lie in (0.5, 1]");
  if (!(gamma > 0.0 && gamma < 0.5)) fail("spsa gamma must lie in (0, 0.5)");
  if (!(c > 0.0)) fail("spsa c must be > 0");
  if (!std::isfinite(a)) fail("spsa a must be finite");
  if (a <= 0.0 && !(first_step > 0.0)) fail("spsa first_step must be > 0 when a is calibrated");
}

double SpsaConfig::stability_constant() const noexcept {
  return stability >= 0.0 ? stability : 0.1 * static_cast<double>(iterations);
}

namespace {

// S_p of the magnitudes of x; the all-zero point scores below every valid value.
class Objective {
 public:
  explicit Objective(SparsityOrder order) : order_(order) {}

  double operator()(const Eigen::VectorXd& x) const {
    if (x.cwiseAbs().maxCoeff() == 0.0) return -1.0;
    const SignalVector c = make_signal(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    return gds(c, order_).value;
  }

  const SparsityOrder& order() const noexcept { return order_; }

 private:
  SparsityOrder order_;
};

struct Candidate {
  Eigen::VectorXd x;
  double value;
};

// Forces the smallest-magnitude coordinates of x towards zero within the
// feasible set: for each support size s, the N - s smallest coordinates are
// driven to zero in the least-squares sense over the null-space coordinates.
Candidate polish(const FeasibleParametrization& fp, const Objective& f, Candidate best) {
  const Eigen::Index n = fp.x_min.size();
  const Eigen::Index d = fp.dimension();
  const Eigen::Index max_support = n - d;
  constexpr int kRounds = 4;
  for (int round = 0; round < kRounds; ++round) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    const Eigen::VectorXd x = best.x;
    std::stable_sort(idx.begin(), idx.end(), [&x](Eigen::Index a, Eigen::Index b) {
      return std::fabs(x[a]) > std::fabs(x[b]);
    });
    bool improved = false;
    for (Eigen::Index s = 1; s <= max_support; ++s) {
      const Eigen::Index t = n - s;
      Eigen::MatrixXd vt(t, d);
      Eigen::VectorXd rhs(t);
      for (Eigen::Index r = 0; r < t; ++r) {
        const Eigen::Index row = idx[static_cast<std::size_t>(s + r)];
        vt.row(r) = fp.null_basis.row(row);
        rhs[r] = -fp.x_min[row];
      }
      const Eigen::VectorXd z = vt.colPivHouseholderQr().solve(rhs);
      Eigen::VectorXd cand = fp.point(z);
      const double value = f(cand);
      if (value > best.value) {
        best = {std::move(cand), value};
        improved = true;
      }
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace

RecoveryResult spsa_recover(const FeasibleParametrization& fp, const SparsityOrder& order,
                            const SpsaConfig& cfg, const std::optional<Eigen::VectorXd>& truth) {
  cfg.validate();
  const Objective f(order);
  const Eigen::Index n = fp.x_min.size();
  const Eigen::Index d = fp.dimension();

  auto finish = [&](Eigen::VectorXd x, double value, double initial, int iters) {
    RecoveryResult res{std::move(x), SparsityValue{std::max(0.0, value), order, static_cast<std::size_t>(n)},
                       std::max(0.0, initial), std::nullopt, iters};
    if (truth) res.mse = mse(*truth, res.x_hat);
    return res;
  };

  const double scale = fp.x_min.norm();
  if (scale == 0.0) {
    // y = 0: the least-norm point is the zero vector and S_p is undefined.
    return finish(fp.x_min, 0.0, 0.0, 0);
  }
  const double start_value = f(fp.x_min);
  if (d == 0) return finish(fp.x_min, start_value, start_value, 0);

  Rng rng(cfg.seed);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double unit = scale / std::sqrt(static_cast<double>(d));
  const double stab = cfg.stability_constant();

  auto draw_delta = [&] {
    Eigen::VectorXd delta(d);
    for (Eigen::Index i = 0; i < d; ++i) delta[i] = coin(rng) ? 1.0 : -1.0;
    return delta;
  };
  auto gradient = [&](const Eigen::VectorXd& z, double ck) {
    const Eigen::VectorXd delta = draw_delta();
    const double diff = f(fp.point(z + ck * delta)) - f(fp.point(z - ck * delta));
    // Delta entries are +-1, so the elementwise reciprocal is Delta itself.
    return Eigen::VectorXd((diff / (2.0 * ck)) * delta);
  };

  double gain = cfg.a;
  if (gain <= 0.0) {
    constexpr int kCalibrationDraws = 8;
    const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(d);
    double mean_norm = 0.0;
    for (int i = 0; i < kCalibrationDraws; ++i) mean_norm += gradient(z0, cfg.c * unit).norm();
    mean_norm /= kCalibrationDraws;
    const double target = cfg.first_step * scale * std::pow(stab + 1.0, cfg.alpha);
    gain = mean_norm > 0.0 ? target / mean_norm : target;
  }

  Candidate best{fp.x_min, start_value};
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(d);
    if (restart > 0) {
      for (Eigen::Index i = 0; i < d; ++i) z[i] = cfg.restart_spread * unit * gauss(rng);
    }
    for (int k = 0; k < cfg.iterations; ++k) {
      const double kk = static_cast<double>(k + 1);
      const double ak = gain / std::pow(kk + stab, cfg.alpha);
      const double ck = cfg.c * unit / std::pow(kk, cfg.gamma);
      z += ak * gradient(z, ck);
      Eigen::VectorXd x = fp.point(z);
      const double value = f(x);
      if (value > best.value) best = {std::move(x), value};
    }
  }

  if (cfg.polish) best = polish(fp, f, std::move(best));
  return finish(std::move(best.x), best.value, start_value, cfg.iterations * cfg.restarts);
}

RecoveryResult spsa_recover(const ProjectionSetup& setup, const Eigen::VectorXd& y,
                            const SparsityOrder& order, const SpsaConfig& config,
                            const std::optional<Eigen::VectorXd>& truth) {
  return spsa_recover(parametrize_feasible(setup, y), order, config, truth);
}

double mse(std::span<const double> x_true, std::span<const double> x_hat) {
  if (x_true.size() != x_hat.size()) {
    throw Error(ErrorKind::kBadShape, "mse operands differ in length");
  }
  if (x_true.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < x_true.size(); ++i) {
    const double e = x_true[i] - x_hat[i];
    acc += e * e;
  }
  return acc / static_cast<double>(x_true.size());
}

double mse(const Eigen::VectorXd& x_true, const Eigen::VectorXd& x_hat) {
  return mse(std::span<const double>(x_true.data(), static_cast<std::size_t>(x_true.size())),
             std::span<const double>(x_hat.data(), static_cast<std::size_t>(x_hat.size())));
}

}  // namespace gds
