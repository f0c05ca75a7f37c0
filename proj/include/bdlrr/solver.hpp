// Copyright 2026 The BDLRR Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "bdlrr/matrix.hpp"
#include "bdlrr/structure.hpp"

namespace bdlrr {

/// Hyperparameters of the block-diagonal LRR program
///   min ||Z||_* + l1/2 ||A~ o Z||_F^2 + l2 ||D o Z||_1 + l3 ||E||_21
///   s.t. X = X_tr Z + E
/// and of the inexact ALM schedule used to solve it.
struct SolverConfig {
  double lambda1 = 5.0;   ///< off-block penalty
  double lambda2 = 0.5;   ///< distance-weighted l1 penalty
  double lambda3 = 15.0;  ///< row-group noise penalty
  double rho = 1.15;
  double mu0 = 0.1;
  double mu_max = 1e8;
  double tol = 1e-6;
  std::size_t max_iter = 500;

  /// lambda1 and lambda2 may be zero (that reduces the model to plain LRR);
  /// everything else must be strictly inside its range.
  void validate() const;
};

/// Full ADMM iterate. Z, P, Q, C2, C3 are n x N; E and C1 are d x N.
struct SolverState {
  Matrix Z, P, Q, E;
  Matrix C1, C2, C3;
  double mu = 0.0;
  std::size_t iteration = 0;

  static SolverState zeros(Eigen::Index d, Eigen::Index n, Eigen::Index total, double mu0);
};

struct IterationRecord {
  std::size_t iter = 0;
  double relative_error = 0.0;  ///< ||X - X_tr Z - E||_F / ||X||_F
  double feas_residual = 0.0;   ///< ||X - X_tr Z - E||_inf
  double pz_residual = 0.0;     ///< ||P - Z||_inf
  double qz_residual = 0.0;     ///< ||Q - Z||_inf
  double mu = 0.0;

  double max_residual() const;
};

struct ConvergenceHistory {
  std::vector<IterationRecord> records;

  /// `iter,relative_error,feas_residual,pz_residual,qz_residual,mu` header
  /// followed by one row per iteration.
  void write_csv(std::ostream& out) const;
};

/// Applies [shift I + X^T X]^{-1} using one cached eigendecomposition of
/// the Gram matrix, so each solve costs two n x n products.
class ShiftedGramSolver {
 public:
  explicit ShiftedGramSolver(const Matrix& x);
  /// shift must be positive.
  Matrix solve(double shift, const Matrix& rhs) const;
  const Matrix& gram() const { return gram_; }

 private:
  Matrix gram_;
  Matrix eigenvectors_;
  Vector eigenvalues_;
};

/// Fixed problem data shared by every update.
struct BdlrrProblem {
  Matrix x_train;        ///< d x n, class-sorted
  Matrix x_all;          ///< d x N, training columns first
  ClassPartition partition;
  Matrix block_mask;     ///< Y, n x n
  Matrix distance;       ///< D, n x N

  BdlrrProblem(Matrix x_train, Matrix x_all, ClassPartition partition);
  Eigen::Index n() const { return x_train.cols(); }
  Eigen::Index total() const { return x_all.cols(); }
};

// Individual subproblem solutions. Each returns the new value of one block
// and leaves `state` untouched.

/// Closed-form Z step with the surrogate l1/2 ||Z - R||_F^2, R = [Y,0] o Z^t.
Matrix update_z(const SolverState& state, const BdlrrProblem& problem,
                const ShiftedGramSolver& gram, const Matrix& block_target,
                const SolverConfig& config);
/// P = svt(Z - C2/mu, 1/mu).
Matrix update_p(const SolverState& state);
/// Q_ij = S_{l2 D_ij / mu}(Z_ij - C3_ij / mu).
Matrix update_q(const SolverState& state, const Matrix& distance, const SolverConfig& config);
/// E = row_group_shrink(X - X_tr Z + C1/mu, l3/mu).
Matrix update_e(const SolverState& state, const Matrix& x_all, const Matrix& x_train,
                const SolverConfig& config);
/// Dual ascent on C1..C3 with the current mu, then mu <- min(mu_max, rho mu).
void step_multipliers(SolverState& state, const Matrix& x_all, const Matrix& x_train,
                      const SolverConfig& config);

struct ConvergenceCheck {
  bool converged = false;
  IterationRecord record;
};

ConvergenceCheck check_convergence(const SolverState& state, const Matrix& x_all,
                                   const Matrix& x_train, double tol);

struct BdlrrResult {
  Matrix Z;  ///< [Z_tr, Z_tt], n x N
  Matrix E;  ///< d x N
  ConvergenceHistory history;
  bool converged = false;
  std::size_t iterations = 0;

  Matrix z_train() const { return Z.leftCols(Z.rows()); }
  Matrix z_test() const { return Z.rightCols(Z.cols() - Z.rows()); }
};

/// Owns one ADMM run. Single-threaded; independent instances may run
/// concurrently.
class BdlrrSolver {
 public:
  BdlrrSolver(BdlrrProblem problem, SolverConfig config);

  /// One full iteration: P, Z, Q, E, multipliers, mu, convergence test.
  /// Throws NumericalError naming the variable if an iterate turns non-finite.
  ConvergenceCheck step();

  /// Iterates from the all-zero state until converged or max_iter.
  BdlrrResult solve();

  const SolverState& state() const { return state_; }
  const BdlrrProblem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }
  const ConvergenceHistory& history() const { return history_; }

 private:
  BdlrrProblem problem_;
  SolverConfig config_;
  ShiftedGramSolver gram_;
  SolverState state_;
  ConvergenceHistory history_;
};

/// Convenience wrapper: x_all = [x_train, x_test] must already be
/// column-normalized with class-sorted training columns.
BdlrrResult solve_bdlrr(const Matrix& x_train, const Matrix& x_all,
                        const ClassPartition& partition, const SolverConfig& config);

}  // namespace bdlrr
