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

#include "bdlrr/matrix.hpp"
#include "bdlrr/solver.hpp"

namespace bdlrr {

/// Inexact-ALM schedule shared by the reference solvers. Defaults match
/// SolverConfig.
struct AlmOptions {
  double tol = 1e-6;
  std::size_t max_iter = 500;
  double rho = 1.15;
  double mu0 = 0.1;
  double mu_max = 1e8;

  void validate() const;
};

struct RpcaResult {
  Matrix low_rank;  ///< X0
  Matrix sparse;    ///< E
  ConvergenceHistory history;
  bool converged = false;
  std::size_t iterations = 0;
};

/// 1 / sqrt(max(rows, cols)).
double rpca_default_lambda(const Matrix& x);

/// min ||X0||_* + lambda ||E||_1  s.t. X = X0 + E.
/// Stops when ||X - X0 - E||_F / ||X||_F <= tol. Records use pz_residual =
/// qz_residual = 0.
RpcaResult rpca_solve(const Matrix& x, double lambda, const AlmOptions& options = {});

struct LrrResult {
  Matrix Z;  ///< m x n over the dictionary columns
  Matrix E;  ///< d x n
  ConvergenceHistory history;
  bool converged = false;
  std::size_t iterations = 0;
};

/// min ||Z||_* + lambda ||E||_{2,1}  s.t. X = D Z + E, with the row-group
/// norm used by the main solver. Auxiliary J = Z carries the nuclear norm.
/// Stops when max(||X - D Z - E||_inf, ||Z - J||_inf) <= tol; pz_residual
/// holds ||J - Z||_inf.
LrrResult lrr_solve(const Matrix& x, const Matrix& dictionary, double lambda,
                    const AlmOptions& options = {});

}  // namespace bdlrr
