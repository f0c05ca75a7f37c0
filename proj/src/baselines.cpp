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

#include "bdlrr/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "bdlrr/prox.hpp"

namespace bdlrr {

void AlmOptions::validate() const {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be at least 1");
  if (!(rho > 1.0)) throw ValidationError("rho must be greater than 1");
  if (!(mu0 > 0.0) || !(mu0 < mu_max)) throw ValidationError("need 0 < mu0 < mu_max");
}

double rpca_default_lambda(const Matrix& x) {
  return 1.0 / std::sqrt(static_cast<double>(std::max(x.rows(), x.cols())));
}

RpcaResult rpca_solve(const Matrix& x, double lambda, const AlmOptions& options) {
  options.validate();
  require_finite(x, "X");
  if (!(lambda > 0.0)) throw ValidationError("RPCA lambda must be positive");

  const double x_norm = x.norm();
  RpcaResult out;
  out.low_rank = Matrix::Zero(x.rows(), x.cols());
  out.sparse = Matrix::Zero(x.rows(), x.cols());
  Matrix multiplier = Matrix::Zero(x.rows(), x.cols());
  double mu = options.mu0;

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    out.low_rank = svt(x - out.sparse + multiplier / mu, 1.0 / mu);
    out.sparse = l1_prox(x - out.low_rank + multiplier / mu, lambda / mu);
    const Matrix residual = x - out.low_rank - out.sparse;
    multiplier += mu * residual;
    mu = std::min(options.mu_max, options.rho * mu);
    if (!multiplier.allFinite() || !out.low_rank.allFinite()) {
      throw NumericalError("RPCA diverged at iteration " + std::to_string(it));
    }

    IterationRecord rec;
    rec.iter = it;
    rec.relative_error = x_norm > 0.0 ? residual.norm() / x_norm : residual.norm();
    rec.feas_residual = max_row_sum_norm(residual);
    rec.mu = mu;
    out.history.records.push_back(rec);
    out.iterations = it;
    if (rec.relative_error <= options.tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

LrrResult lrr_solve(const Matrix& x, const Matrix& dictionary, double lambda,
                    const AlmOptions& options) {
  options.validate();
  require_finite(x, "X");
  require_finite(dictionary, "dictionary");
  if (!(lambda > 0.0)) throw ValidationError("LRR lambda must be positive");
  if (dictionary.rows() != x.rows()) {
    throw DimensionError("dictionary has " + std::to_string(dictionary.rows()) +
                         " rows, X has " + std::to_string(x.rows()));
  }

  const Eigen::Index m = dictionary.cols();
  const Eigen::Index n = x.cols();
  const ShiftedGramSolver gram(dictionary);
  const double x_norm = x.norm();

  LrrResult out;
  out.Z = Matrix::Zero(m, n);
  out.E = Matrix::Zero(x.rows(), n);
  Matrix j_aux = Matrix::Zero(m, n);
  Matrix y1 = Matrix::Zero(x.rows(), n);
  Matrix y2 = Matrix::Zero(m, n);
  double mu = options.mu0;

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    j_aux = svt(out.Z + y2 / mu, 1.0 / mu);
    const Matrix rhs =
        dictionary.transpose() * (x - out.E + y1 / mu) + j_aux - y2 / mu;
    out.Z = gram.solve(1.0, rhs);
    out.E = row_group_shrink(x - dictionary * out.Z + y1 / mu, lambda / mu);

    const Matrix feas = x - dictionary * out.Z - out.E;
    const Matrix gap = out.Z - j_aux;
    y1 += mu * feas;
    y2 += mu * gap;
    mu = std::min(options.mu_max, options.rho * mu);
    if (!y1.allFinite() || !y2.allFinite() || !out.Z.allFinite()) {
      throw NumericalError("LRR diverged at iteration " + std::to_string(it));
    }

    IterationRecord rec;
    rec.iter = it;
    rec.relative_error = x_norm > 0.0 ? feas.norm() / x_norm : feas.norm();
    rec.feas_residual = max_row_sum_norm(feas);
    rec.pz_residual = max_row_sum_norm(gap);
    rec.mu = mu;
    out.history.records.push_back(rec);
    out.iterations = it;
    if (rec.max_residual() <= options.tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace bdlrr
