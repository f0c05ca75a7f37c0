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

#include "bdlrr/structure.hpp"
#include "test_support.hpp"

using namespace bdlrr;
using namespace bdlrr::testing;

TEST_CASE("ClassPartition validation and labels") {
  CHECK_THROWS_AS(ClassPartition({}), ValidationError);
  CHECK_THROWS_AS(ClassPartition({2, 0}), ValidationError);
  const ClassPartition p({2, 1, 3});
  CHECK(p.total() == 6);
  CHECK(p.offset(2) == 3);
  CHECK(p.labels() == std::vector<int>{1, 1, 2, 3, 3, 3});
  CHECK(ClassPartition::from_sorted_labels({1, 1, 2, 3, 3, 3}, 3) == p);
  CHECK_THROWS_AS(ClassPartition::from_sorted_labels({1, 2, 1}, 2), ValidationError);
  CHECK_THROWS_AS(ClassPartition::from_sorted_labels({1, 1}, 2), ValidationError);
  CHECK_THROWS_AS(ClassPartition::from_sorted_labels({1, 4}, 3), ValidationError);
}

TEST_CASE("block mask Y") {
  Matrix expected(3, 3);
  expected << 1, 1, 0, 1, 1, 0, 0, 0, 1;
  CHECK(build_block_mask(ClassPartition({2, 1})) == expected);
  CHECK(build_block_mask(ClassPartition({1, 1, 1})) == Matrix::Identity(3, 3));
  CHECK(build_block_mask(ClassPartition({3})) == Matrix::Ones(3, 3));
}

TEST_CASE("off-block mask A") {
  Matrix expected(3, 3);
  expected << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  CHECK(build_offblock_mask(ClassPartition({2, 1})) == expected);
  CHECK(build_offblock_mask(ClassPartition({3})) == Matrix::Zero(3, 3));
  Matrix anti(2, 2);
  anti << 0, 1, 1, 0;
  CHECK(build_offblock_mask(ClassPartition({1, 1})) == anti);
}

TEST_CASE("A and Y partition the all-ones matrix for every partition") {
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{
           {1}, {4}, {1, 1}, {2, 3}, {3, 1, 2}, {1, 1, 1, 1, 5}}) {
    const ClassPartition p(sizes);
    const Matrix y = build_block_mask(p), a = build_offblock_mask(p);
    const auto n = static_cast<Eigen::Index>(p.total());
    CHECK(a + y == Matrix::Ones(n, n));
    CHECK(a.cwiseProduct(y) == Matrix::Zero(n, n));
  }
}

TEST_CASE("extended mask") {
  const ClassPartition p({2, 1});
  const Matrix a = build_offblock_mask(p);
  const Matrix ext = extend_offblock_mask(a, 4);
  REQUIRE(ext.cols() == 4);
  CHECK(ext.leftCols(3) == a);
  CHECK(ext.col(3) == Vector::Ones(3));
  CHECK(extend_offblock_mask(a, 3) == a);
  const Matrix ext2 = extend_offblock_mask(a, 5);
  CHECK(ext2.rightCols(2) == Matrix::Ones(3, 2));
  const double ones = ext2.sum();
  CHECK(ones == 3 * 2 + a.sum());
  CHECK_THROWS_AS(extend_offblock_mask(a, 2), DimensionError);
}

TEST_CASE("distance matrix") {
  Matrix tr(2, 1), all(2, 2);
  tr << 0, 0;
  all << 0, 3, 0, 4;
  const Matrix d = build_distance(tr, all);
  CHECK(d(0, 0) == 0);
  CHECK(d(0, 1) == doctest::Approx(25));
  CHECK_THROWS_AS(build_distance(tr, Matrix::Zero(3, 2)), DimensionError);

  std::mt19937_64 gen(5);
  const Matrix u = unit_columns(random_matrix(gen, 7, 100));
  const Matrix v = unit_columns(random_matrix(gen, 7, 100));
  const Matrix duv = build_distance(u, v);
  for (Eigen::Index k = 0; k < 100; ++k) {
    const double direct = (u.col(k) - v.col(k)).squaredNorm();
    const double expansion = 2.0 - 2.0 * u.col(k).dot(v.col(k));
    CHECK(std::abs(duv(k, k) - direct) < 1e-10);
    CHECK(std::abs(direct - expansion) < 1e-10);
  }

  // Training block: symmetric, zero diagonal, nonnegative.
  Matrix all2(7, 130);
  all2 << u, v.leftCols(30);
  const Matrix dt = build_distance(u, all2);
  CHECK((dt.array() >= 0).all());
  CHECK(dt.leftCols(100).diagonal() == Vector::Zero(100));
  CHECK((dt.leftCols(100) - dt.leftCols(100).transpose()).norm() < 1e-12);
}

TEST_CASE("block target R") {
  const ClassPartition p({2, 1});
  const Matrix y = build_block_mask(p);
  Matrix expected = Matrix::Zero(3, 4);
  expected.leftCols(3) = y;
  CHECK(block_target(y, Matrix::Ones(3, 4)) == expected);
  CHECK(block_target(y, Matrix::Zero(3, 4)) == Matrix::Zero(3, 4));
  CHECK_THROWS_AS(block_target(y, Matrix::Zero(3, 2)), DimensionError);

  std::mt19937_64 gen(3);
  const Matrix z = random_matrix(gen, 3, 6);
  const Matrix ext = extend_offblock_mask(build_offblock_mask(p), 6);
  CHECK((block_target(y, z) + ext.cwiseProduct(z) - z).norm() == 0.0);
  const Matrix ztr = z.leftCols(3);
  CHECK(y.cwiseProduct(ztr) + build_offblock_mask(p).cwiseProduct(ztr) == ztr);
}

TEST_CASE("off-block mass ratio") {
  const ClassPartition p({2, 1});
  CHECK(off_block_mass_ratio(build_block_mask(p), p) == 0.0);
  CHECK(off_block_mass_ratio(build_offblock_mask(p), p) == 1.0);
  CHECK(off_block_mass_ratio(Matrix::Ones(3, 3), p) == doctest::Approx(4.0 / 9.0));
  CHECK_THROWS_AS(off_block_mass_ratio(Matrix::Zero(3, 3), p), ValidationError);
  CHECK_THROWS_AS(off_block_mass_ratio(Matrix::Ones(2, 2), p), DimensionError);
}
