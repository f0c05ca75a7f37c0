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

#include "bdlrr/out_of_sample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/SVD>

#include "bdlrr/prox.hpp"
#include "bdlrr/structure.hpp"

namespace bdlrr {

OosConfig OosConfig::from_solver(const SolverConfig& config) {
  OosConfig out;
  out.beta1 = config.lambda1 / config.lambda3;
  out.beta2 = config.lambda2 / (2.0 * config.lambda3);
  return out;
}

void OosConfig::validate() const {
  if (!(beta1 >= 0.0) || !std::isfinite(beta1)) throw ValidationError("beta1 must be nonnegative");
  if (!(beta2 >= 0.0) || !std::isfinite(beta2)) throw ValidationError("beta2 must be nonnegative");
  if (max_iter < 1) throw ValidationError("max_iter must be at least 1");
  if (!(step_tol >= 0.0)) throw ValidationError("step_tol must be nonnegative");
}

namespace {

void check_dims(const Vector& b, const Matrix& x_train, const Vector& weights) {
  if (b.size() != x_train.rows()) {
    throw DimensionError("sample has " + std::to_string(b.size()) + " entries, X_tr has " +
                         std::to_string(x_train.rows()) + " rows");
  }
  if (weights.size() != x_train.cols()) {
    throw DimensionError("weight vector has " + std::to_string(weights.size()) +
                         " entries, X_tr has " + std::to_string(x_train.cols()) + " columns");
  }
}

}  // namespace

double oos_objective(const Vector& z, const Vector& b, const Matrix& x_train,
                     const Vector& weights, double beta1, double beta2) {
  check_dims(b, x_train, weights);
  if (z.size() != x_train.cols()) {
    throw DimensionError("representation has " + std::to_string(z.size()) + " entries");
  }
  return 0.5 * (b - x_train * z).squaredNorm() + 0.5 * beta1 * z.squaredNorm() +
         beta2 * weights.cwiseProduct(z).lpNorm<1>();
}

double oos_step_size(const Matrix& x_train, double beta1) {
  if (x_train.size() == 0) return beta1;
  const Eigen::JacobiSVD<Matrix> svd(x_train);
  const double smax = svd.singularValues()(0);
  return smax * smax + beta1;
}

OosResult oos_solve(const Vector& b, const Matrix& x_train, const Vector& weights,
                    const OosConfig& config) {
  config.validate();
  check_dims(b, x_train, weights);
  if ((weights.array() < 0.0).any()) throw ValidationError("oos weights must be nonnegative");

  const double eta = oos_step_size(x_train, config.beta1);
  const Vector xtb = x_train.transpose() * b;
  const Vector thresholds = (config.beta2 / eta) * weights;

  OosResult out;
  out.z = Vector::Zero(x_train.cols());
  if (eta == 0.0) {
    // X_tr = 0 and beta1 = 0: every z attains the same objective.
    out.objective.push_back(0.5 * b.squaredNorm());
    out.converged = true;
    return out;
  }
  out.objective.push_back(oos_objective(out.z, b, x_train, weights, config.beta1, config.beta2));
  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const Vector grad = x_train.transpose() * (x_train * out.z) - xtb + config.beta1 * out.z;
    if (!grad.allFinite()) {
      throw NumericalError("out-of-sample gradient became non-finite at iteration " +
                           std::to_string(k + 1));
    }
    const Vector forward = out.z - grad / eta;
    Vector next(forward.size());
    for (Eigen::Index i = 0; i < forward.size(); ++i) {
      next(i) = soft_threshold(forward(i), thresholds(i));
    }
    const double change = (next - out.z).lpNorm<Eigen::Infinity>();
    out.z = std::move(next);
    out.iterations = k + 1;
    out.objective.push_back(oos_objective(out.z, b, x_train, weights, config.beta1, config.beta2));
    if (change <= config.step_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

Vector oos_weights(const Vector& b, const Matrix& x_train) {
  return build_distance(x_train, Matrix(b)).col(0);
}

int oos_predict(const Vector& b, const Matrix& x_train, const TrainedModel& model,
                const OosConfig& config) {
  if (model.W.cols() != x_train.cols()) {
    throw DimensionError("classifier expects " + std::to_string(model.W.cols()) +
                         "-dimensional representations, X_tr has " +
                         std::to_string(x_train.cols()) + " columns");
  }
  const OosResult r = oos_solve(b, x_train, oos_weights(b, x_train), config);
  return argmax_label(model.W * r.z);
}

std::vector<int> oos_predict_batch(const Matrix& samples, const Matrix& x_train,
                                   const TrainedModel& model, const OosConfig& config,
                                   unsigned threads) {
  const auto m = static_cast<std::size_t>(samples.cols());
  std::vector<int> labels(m, 0);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(m, 1))));
  if (threads == 1) {
    for (std::size_t j = 0; j < m; ++j) {
      labels[j] = oos_predict(samples.col(static_cast<Eigen::Index>(j)), x_train, model, config);
    }
    return labels;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < m && !failed; j = next++) {
        try {
          labels[j] =
              oos_predict(samples.col(static_cast<Eigen::Index>(j)), x_train, model, config);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return labels;
}

}  // namespace bdlrr
