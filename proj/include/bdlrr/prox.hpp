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

#include "bdlrr/matrix.hpp"

namespace bdlrr {

/// Economy-size singular value decomposition M = U diag(s) V^T with
/// r = min(rows, cols) and s sorted nonincreasing.
struct SvdResult {
  Matrix U;
  Vector singular_values;
  Matrix V;

  /// Number of singular values above rel_tol * s_1.
  Eigen::Index rank(double rel_tol = 1e-12) const;
  Matrix reconstruct() const;
};

/// Throws NumericalError if the decomposition does not converge.
SvdResult svd_thin(const Matrix& m);

/// Scalar shrinkage S_lambda(x) = sign(x) max(|x| - lambda, 0).
inline double soft_threshold(double x, double lambda) {
  if (x > lambda) return x - lambda;
  if (x < -lambda) return x + lambda;
  return 0.0;
}

/// Proximal map of tau * ||.||_*: soft-thresholds the singular values.
Matrix svt(const Matrix& m, double tau);

/// Proximal map of tau * sum_ij w_ij |q_ij|.
Matrix weighted_l1_prox(const Matrix& m, const Matrix& weights, double tau);

/// Entrywise soft-thresholding with a common threshold.
Matrix l1_prox(const Matrix& m, double tau);

/// Proximal map of tau * sum_i ||row_i||_2. Rows with norm <= tau vanish,
/// the others are scaled by (||row|| - tau) / ||row||.
Matrix row_group_shrink(const Matrix& gamma, double tau);

/// sum_i ||row_i||_2, the group norm paired with row_group_shrink.
double row_group_norm(const Matrix& m);

double nuclear_norm(const Matrix& m);

}  // namespace bdlrr
