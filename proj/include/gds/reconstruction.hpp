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

// Compressive-sampling recovery: a signal x0 is observed through y = A x0
// with A an M x N Gaussian matrix, and recovered as
//
//   argmax_x S_p(|x|)  subject to  A x = y.
//
// The feasible set is parametrized as x(z) = x_min + V z, where x_min is the
// least-norm solution and V an orthonormal null-space basis, and S_p is
// maximized over z with SPSA. Every iterate is feasible by construction.

#ifndef GDS_RECONSTRUCTION_HPP_
#define GDS_RECONSTRUCTION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gds/sparsity_core.hpp"
#include "gds/sparsity_fast.hpp"

namespace gds {

struct ProjectionSetup {
  Eigen::MatrixXd matrix;  // M x N, i.i.d. N(0, 1)
  std::uint64_t seed = 0;

  Eigen::Index rows() const noexcept { return matrix.rows(); }
  Eigen::Index cols() const noexcept { return matrix.cols(); }
};

// Deterministic per seed; redraws in the (measure-zero) rank-deficient case.
// Throws kBadShape unless 1 <= M <= N.
ProjectionSetup gaussian_projection(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

struct FeasibleParametrization {
  Eigen::VectorXd x_min;     // least-norm solution of A x = y
  Eigen::MatrixXd null_basis;  // N x (N - M), orthonormal columns, A V = 0

  Eigen::Index dimension() const noexcept { return null_basis.cols(); }
  Eigen::VectorXd point(const Eigen::VectorXd& z) const { return x_min + null_basis * z; }
};

// Throws kDegenerateProjection if A is not of full row rank and kBadShape if
// y has the wrong length.
FeasibleParametrization parametrize_feasible(const ProjectionSetup& setup,
                                             const Eigen::VectorXd& y);

struct SpsaConfig {
  int iterations = 2000;
  // Gain a_k = a / (k + 1 + stability)^alpha. A non-positive `a` asks for
  // calibration so the first step has norm first_step * |x_min|.
  double a = 0.0;
  double first_step = 0.1;
  // Negative means 10% of `iterations`.
  double stability = -1.0;
  double alpha = 0.602;
  // Perturbation c_k = c / (k + 1)^gamma, measured as a fraction of |x_min|
  // spread over the null-space coordinates.
  double c = 0.05;
  double gamma = 0.101;
  int restarts = 3;
  // Restarts after the first begin at z ~ N(0, (restart_spread * |x_min|)^2 / (N - M)).
  double restart_spread = 0.1;
  std::uint64_t seed = 0;
  // Refine the best SPSA iterate by zeroing its smallest coordinates within
  // the feasible set, keeping any refinement that raises the objective.
  bool polish = true;

  // Throws kBadConfig on out-of-range values.
  void validate() const;
  double stability_constant() const noexcept;
};

struct RecoveryResult {
  Eigen::VectorXd x_hat;
  SparsityValue objective;
  // Objective at the least-norm starting point.
  double initial_objective = 0.0;
  std::optional<double> mse;  // filled when the truth is supplied
  int iterations_used = 0;
};

RecoveryResult spsa_recover(const ProjectionSetup& setup, const Eigen::VectorXd& y,
                            const SparsityOrder& order, const SpsaConfig& config,
                            const std::optional<Eigen::VectorXd>& truth = std::nullopt);

// Same, reusing an existing parametrization of the feasible set.
RecoveryResult spsa_recover(const FeasibleParametrization& feasible, const SparsityOrder& order,
                            const SpsaConfig& config,
                            const std::optional<Eigen::VectorXd>& truth = std::nullopt);

// (1/N) sum (x_true - x_hat)^2. Throws kBadShape on length mismatch.
double mse(std::span<const double> x_true, std::span<const double> x_hat);
double mse(const Eigen::VectorXd& x_true, const Eigen::VectorXd& x_hat);

}  // namespace gds

#endif  // GDS_RECONSTRUCTION_HPP_
