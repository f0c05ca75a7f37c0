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

#include "doctest.h"

#include "bdlrr/baselines.hpp"
#include "bdlrr/dataset.hpp"
#include "bdlrr/prox.hpp"
#include "test_support.hpp"

using namespace bdlrr;
using namespace bdlrr::testing;

TEST_CASE("rpca: zero input") {
  const RpcaResult r = rpca_solve(Matrix::Zero(5, 4), 0.5);
  CHECK(r.converged);
  CHECK(r.low_rank == Matrix::Zero(5, 4));
  CHECK(r.sparse == Matrix::Zero(5, 4));
}

TEST_CASE("rpca: clean rank-1 input is kept in the low-rank part") {
  std::mt19937_64 gen(51);
  const Matrix x = random_matrix(gen, 30, 1) * random_matrix(gen, 1, 20);
  AlmOptions opt;
  opt.tol = 1e-9;
  const RpcaResult r = rpca_solve(x, 1.0 / std::sqrt(30.0), opt);
  CHECK(r.converged);
  CHECK((r.low_rank - x).norm() / x.norm() < 1e-6);
  CHECK(r.sparse.norm() / x.norm() < 1e-6);
}

TEST_CASE("rpca: objective no worse than the trivial splits") {
  std::mt19937_64 gen(52);
  Matrix x = random_matrix(gen, 20, 2) * random_matrix(gen, 2, 20);
  for (int k = 0; k < 20; ++k) x(k, (3 * k) % 20) += (k % 2 ? 1.0 : -1.0);
  const double lambda = rpca_default_lambda(x);
  const RpcaResult r = rpca_solve(x, lambda);
  auto objective = [&](const Matrix& low, const Matrix& sparse) {
    return jacobi_nuclear_norm(low) + lambda * sparse.cwiseAbs().sum();
  };
  const double at = objective(r.low_rank, r.sparse);
  CHECK(at <= objective(x, Matrix::Zero(20, 20)) + 1e-6);
  CHECK(at <= objective(Matrix::Zero(20, 20), x) + 1e-6);
  double prev = 0.0;
  for (const auto& rec : r.history.records) {
    CHECK(rec.mu >= prev);
    prev = rec.mu;
  }
}

TEST_CASE("lrr: zero input") {
  std::mt19937_64 gen(53);
  const LrrResult r = lrr_solve(Matrix::Zero(6, 5), random_matrix(gen, 6, 5), 1.0);
  CHECK(r.converged);
  CHECK(r.Z == Matrix::Zero(5, 5));
  CHECK(r.E == Matrix::Zero(6, 5));
}

TEST_CASE("lrr: independent subspaces give a near block-diagonal Z") {
  SynthSpec spec;
  spec.classes = 2;
  spec.subspace_dim = 2;
  spec.ambient_dim = 20;
  spec.train_per_class = 10;
  spec.test_per_class = 1;
  spec.noise_std = 0.0;
  const PartitionedDataset ds = synth_union_of_subspaces(spec);
  const LrrResult r = lrr_solve(ds.x_train, ds.x_train, 10.0);
  CHECK(r.converged);
  CHECK(off_block_mass_ratio(r.Z, ds.partition) <= 0.05);
  CHECK(r.history.records.back().max_residual() <= 1e-6);
}

TEST_CASE("lrr: shape checks") {
  CHECK_THROWS_AS(lrr_solve(Matrix::Ones(3, 2), Matrix::Ones(4, 2), 1.0), DimensionError);
  CHECK_THROWS_AS(lrr_solve(Matrix::Ones(3, 2), Matrix::Ones(3, 2), 0.0), ValidationError);
}
