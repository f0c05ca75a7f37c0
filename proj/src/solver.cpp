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

#include "bdlrr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "bdlrr/io.hpp"
#include "bdlrr/prox.hpp"

namespace bdlrr {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void check_finite(const Matrix& m, const char* name, std::size_t iteration) {
  if (!m.allFinite()) {
    throw NumericalError(std::string("ADMM diverged: ") + name +
                         " became non-finite at iteration " + std::to_string(iteration));
  }
}

}  // namespace

void SolverConfig::validate() const {
  require(lambda1 >= 0.0 && std::isfinite(lambda1), "lambda1 must be nonnegative");
  require(lambda2 >= 0.0 && std::isfinite(lambda2), "lambda2 must be nonnegative");
  require(lambda3 > 0.0 && std::isfinite(lambda3), "lambda3 must be positive");
  require(rho > 1.0 && std::isfinite(rho), "rho must be greater than 1");
  require(mu0 > 0.0, "mu0 must be positive");
  require(mu0 < mu_max && std::isfinite(mu_max), "mu0 must be smaller than mu_max");
  require(tol > 0.0, "tol must be positive");
  require(max_iter >= 1, "max_iter must be at least 1");
}

SolverState SolverState::zeros(Eigen::Index d, Eigen::Index n, Eigen::Index total,
                               double mu0) {
  SolverState s;
  s.Z = Matrix::Zero(n, total);
  s.P = Matrix::Zero(n, total);
  s.Q = Matrix::Zero(n, total);
  s.E = Matrix::Zero(d, total);
  s.C1 = Matrix::Zero(d, total);
  s.C2 = Matrix::Zero(n, total);
  s.C3 = Matrix::Zero(n, total);
  s.mu = mu0;
  s.iteration = 0;
  return s;
}

double IterationRecord::max_residual() const {
  return std::max({feas_residual, pz_residual, qz_residual});
}

void ConvergenceHistory::write_csv(std::ostream& out) const {
  out << "iter,relative_error,feas_residual,pz_residual,qz_residual,mu\n";
  for (const auto& r : records) {
    out << r.iter << ',' << format_double(r.relative_error) << ','
        << format_double(r.feas_residual) << ',' << format_double(r.pz_residual) << ','
        << format_double(r.qz_residual) << ',' << format_double(r.mu) << '\n';
  }
}

ShiftedGramSolver::ShiftedGramSolver(const Matrix& x) : gram_(x.transpose() * x) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram_);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the Gram matrix failed");
  }
  eigenvectors_ = eig.eigenvectors();
  // Gram matrices are PSD; round-off can push tiny eigenvalues below zero.
  eigenvalues_ = eig.eigenvalues().cwiseMax(0.0);
}

Matrix ShiftedGramSolver::solve(double shift, const Matrix& rhs) const {
  if (!(shift > 0.0)) throw ValidationError("Gram shift must be positive");
  if (rhs.rows() != gram_.rows()) {
    throw DimensionError("shifted Gram solve: rhs is " + shape_string(rhs) +
                         ", system is " + shape_string(gram_));
  }
  const Vector inv = (eigenvalues_.array() + shift).inverse().matrix();
  return eigenvectors_ * (inv.asDiagonal() * (eigenvectors_.transpose() * rhs));
}

BdlrrProblem::BdlrrProblem(Matrix x_train_in, Matrix x_all_in, ClassPartition p)
    : x_train(std::move(x_train_in)), x_all(std::move(x_all_in)), partition(std::move(p)) {
  require_finite(x_train, "X_tr");
  require_finite(x_all, "X");
  if (x_train.rows() != x_all.rows()) {
    throw DimensionError("X_tr has " + std::to_string(x_train.rows()) + " rows, X has " +
                         std::to_string(x_all.rows()));
  }
  if (static_cast<std::size_t>(x_train.cols()) != partition.total()) {
    throw DimensionError("partition covers " + std::to_string(partition.total()) +
                         " samples, X_tr has " + std::to_string(x_train.cols()));
  }
  if (x_all.cols() < x_train.cols()) {
    throw DimensionError("X must contain the training columns first");
  }
  block_mask = build_block_mask(partition);
  distance = build_distance(x_train, x_all);
}

Matrix update_z(const SolverState& s, const BdlrrProblem& problem,
                const ShiftedGramSolver& gram, const Matrix& block_target,
                const SolverConfig& config) {
  const double ratio = config.lambda1 / s.mu;
  const Matrix s1 = problem.x_all - s.E + s.C1 / s.mu;
  Matrix rhs = problem.x_train.transpose() * s1;
  rhs += s.P + s.C2 / s.mu;
  rhs += s.Q + s.C3 / s.mu;
  if (ratio != 0.0) rhs += ratio * block_target;
  return gram.solve(2.0 + ratio, rhs);
}

Matrix update_p(const SolverState& s) {
  return svt(s.Z - s.C2 / s.mu, 1.0 / s.mu);
}

Matrix update_q(const SolverState& s, const Matrix& distance, const SolverConfig& config) {
  require_shape(distance, s.Z.rows(), s.Z.cols(), "distance matrix");
  return weighted_l1_prox(s.Z - s.C3 / s.mu, distance, config.lambda2 / s.mu);
}

Matrix update_e(const SolverState& s, const Matrix& x_all, const Matrix& x_train,
                const SolverConfig& config) {
  const Matrix gamma = x_all - x_train * s.Z + s.C1 / s.mu;
  return row_group_shrink(gamma, config.lambda3 / s.mu);
}

void step_multipliers(SolverState& s, const Matrix& x_all, const Matrix& x_train,
                      const SolverConfig& config) {
  s.C1 += s.mu * (x_all - x_train * s.Z - s.E);
  s.C2 += s.mu * (s.P - s.Z);
  s.C3 += s.mu * (s.Q - s.Z);
  s.mu = std::min(config.mu_max, config.rho * s.mu);
}

ConvergenceCheck check_convergence(const SolverState& s, const Matrix& x_all,
                                   const Matrix& x_train, double tol) {
  const Matrix feas = x_all - x_train * s.Z - s.E;
  ConvergenceCheck out;
  out.record.iter = s.iteration;
  const double x_norm = x_all.norm();
  out.record.relative_error = x_norm > 0.0 ? feas.norm() / x_norm : feas.norm();
  out.record.feas_residual = max_row_sum_norm(feas);
  out.record.pz_residual = max_row_sum_norm(s.P - s.Z);
  out.record.qz_residual = max_row_sum_norm(s.Q - s.Z);
  out.record.mu = s.mu;
  out.converged = out.record.max_residual() <= tol;
  return out;
}

BdlrrSolver::BdlrrSolver(BdlrrProblem problem, SolverConfig config)
    : problem_(std::move(problem)),
      config_(config),
      gram_(problem_.x_train),
      state_(SolverState::zeros(problem_.x_train.rows(), problem_.n(), problem_.total(),
                                config.mu0)) {
  config_.validate();
}

ConvergenceCheck BdlrrSolver::step() {
  const std::size_t it = state_.iteration + 1;
  // P^{t+1} from Z^t first: the Z step consumes P^{t+1}.
  state_.P = update_p(state_);
  check_finite(state_.P, "P", it);
  const Matrix target = block_target(problem_.block_mask, state_.Z);
  state_.Z = update_z(state_, problem_, gram_, target, config_);
  check_finite(state_.Z, "Z", it);
  state_.Q = update_q(state_, problem_.distance, config_);
  check_finite(state_.Q, "Q", it);
  state_.E = update_e(state_, problem_.x_all, problem_.x_train, config_);
  check_finite(state_.E, "E", it);

  step_multipliers(state_, problem_.x_all, problem_.x_train, config_);
  check_finite(state_.C1, "C1", it);
  check_finite(state_.C2, "C2", it);
  check_finite(state_.C3, "C3", it);
  state_.iteration = it;

  ConvergenceCheck check = check_convergence(state_, problem_.x_all, problem_.x_train,
                                             config_.tol);
  history_.records.push_back(check.record);
  return check;
}

BdlrrResult BdlrrSolver::solve() {
  BdlrrResult result;
  while (state_.iteration < config_.max_iter) {
    if (step().converged) {
      result.converged = true;
      break;
    }
  }
  result.Z = state_.Z;
  result.E = state_.E;
  result.history = history_;
  result.iterations = state_.iteration;
  return result;
}

BdlrrResult solve_bdlrr(const Matrix& x_train, const Matrix& x_all,
                        const ClassPartition& partition, const SolverConfig& config) {
  BdlrrSolver solver(BdlrrProblem(x_train, x_all, partition), config);
  return solver.solve();
}

}  // namespace bdlrr
