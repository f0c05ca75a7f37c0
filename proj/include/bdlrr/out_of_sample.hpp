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
#include <vector>

#include "bdlrr/classifier.hpp"
#include "bdlrr/matrix.hpp"
#include "bdlrr/solver.hpp"

namespace bdlrr {

/// Representation of one new sample b over the fixed training dictionary:
///   min_z 1/2 ||b - X_tr z||^2 + beta1/2 ||z||^2 + beta2 ||d o z||_1
/// solved by proximal gradient with a fixed step 1/eta.
struct OosConfig {
  double beta1 = 5.0 / 15.0;
  double beta2 = 0.5 / 30.0;
  std::size_t max_iter = 300;
  double step_tol = 1e-8;  ///< stop when max_i |z_i^{k+1} - z_i^k| <= step_tol

  /// beta1 = lambda1 / lambda3, beta2 = lambda2 / (2 lambda3).
  static OosConfig from_solver(const SolverConfig& config);
  void validate() const;
};

double oos_objective(const Vector& z, const Vector& b, const Matrix& x_train,
                     const Vector& weights, double beta1, double beta2);

/// eta = sigma_max(X_tr)^2 + beta1, the Lipschitz constant of the smooth
/// part. The cheaper Frobenius bound ||X_tr||_F^2 is valid too but several
/// times looser, which stalls convergence inside max_iter.
double oos_step_size(const Matrix& x_train, double beta1);

struct OosResult {
  Vector z;
  std::vector<double> objective;  ///< objective[k] is the value at z^k, k = 0 is z = 0
  std::size_t iterations = 0;
  bool converged = false;
};

/// Throws NumericalError on a non-finite gradient.
OosResult oos_solve(const Vector& b, const Matrix& x_train, const Vector& weights,
                    const OosConfig& config);

/// Squared distances from every training column to b.
Vector oos_weights(const Vector& b, const Matrix& x_train);

/// Solves for the representation of b (weights from oos_weights) and
/// classifies it with the model's W.
int oos_predict(const Vector& b, const Matrix& x_train, const TrainedModel& model,
                const OosConfig& config);

/// One label per column of `samples`. Columns are solved independently,
/// across up to `threads` workers.
std::vector<int> oos_predict_batch(const Matrix& samples, const Matrix& x_train,
                                   const TrainedModel& model, const OosConfig& config,
                                   unsigned threads = 1);

}  // namespace bdlrr
