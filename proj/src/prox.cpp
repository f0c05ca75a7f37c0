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

#include "bdlrr/prox.hpp"

#include <algorithm>
#include <string>

namespace bdlrr {

namespace {

void require_nonnegative(double tau, const char* name) {
  if (!(tau >= 0.0)) {
    throw ValidationError(std::string(name) + " must be nonnegative");
  }
}

}  // namespace

Eigen::Index SvdResult::rank(double rel_tol) const {
  if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0;
  const double cutoff = rel_tol * singular_values(0);
  return (singular_values.array() > cutoff).count();
}

Matrix SvdResult::reconstruct() const {
  return U * singular_values.asDiagonal() * V.transpose();
}

SvdResult svd_thin(const Matrix& m) {
  if (!m.allFinite()) {
    throw NumericalError("svd_thin: input contains non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("svd_thin: decomposition of " + shape_string(m) +
                         " matrix did not converge");
  }
  SvdResult out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  if (!out.U.allFinite() || !out.V.allFinite() || !out.singular_values.allFinite()) {
    throw NumericalError("svd_thin: decomposition produced non-finite factors");
  }
  return out;
}

Matrix svt(const Matrix& m, double tau) {
  require_nonnegative(tau, "svt threshold");
  const SvdResult svd = svd_thin(m);
  const Vector& s = svd.singular_values;
  // s is sorted, so the surviving values form a prefix.
  Eigen::Index keep = 0;
  while (keep < s.size() && s(keep) > tau) ++keep;
  if (keep == 0) return Matrix::Zero(m.rows(), m.cols());
  const Vector shrunk = (s.head(keep).array() - tau).matrix();
  return svd.U.leftCols(keep) * shrunk.asDiagonal() * svd.V.leftCols(keep).transpose();
}

Matrix weighted_l1_prox(const Matrix& m, const Matrix& weights, double tau) {
  require_nonnegative(tau, "weighted_l1_prox threshold");
  require_shape(weights, m.rows(), m.cols(), "weighted_l1_prox weights");
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(i, j) = soft_threshold(m(i, j), tau * weights(i, j));
    }
  }
  return out;
}

Matrix l1_prox(const Matrix& m, double tau) {
  require_nonnegative(tau, "l1_prox threshold");
  return m.unaryExpr([tau](double x) { return soft_threshold(x, tau); });
}

Matrix row_group_shrink(const Matrix& gamma, double tau) {
  require_nonnegative(tau, "row_group_shrink threshold");
  Matrix out = Matrix::Zero(gamma.rows(), gamma.cols());
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
    const double norm = gamma.row(i).norm();
    if (norm > tau) out.row(i) = ((norm - tau) / norm) * gamma.row(i);
  }
  return out;
}

double row_group_norm(const Matrix& m) {
  return m.rowwise().norm().sum();
}

double nuclear_norm(const Matrix& m) {
  return svd_thin(m).singular_values.sum();
}

}  // namespace bdlrr
