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

#include <cstdint>
#include <random>
#include <vector>

#include "bdlrr/matrix.hpp"
#include "bdlrr/structure.hpp"

namespace bdlrr {

/// Portable random source: std::mt19937_64 (bit stream fixed by the
/// standard), 53-bit uniforms from the top bits, and Box-Muller normals.
/// Library distributions are avoided because their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound);

  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Normalized {
  Matrix matrix;
  std::vector<Eigen::Index> zero_columns;  ///< left unchanged
};

/// Scales every nonzero column to unit l2 norm.
Normalized normalize_columns(const Matrix& m);

/// Training/test split ready for the solver: training columns are stable-
/// sorted by class and every column is unit-norm.
struct PartitionedDataset {
  Matrix x_train;  ///< d x n
  Matrix x_test;   ///< d x m
  std::vector<int> train_labels;  ///< class-sorted, 1..C
  std::vector<int> test_labels;   ///< original order; may be empty
  ClassPartition partition{{1}};
  /// train_permutation[k] is the original index of sorted training column k.
  std::vector<std::size_t> train_permutation;
  std::vector<Eigen::Index> zero_train_columns;
  std::vector<Eigen::Index> zero_test_columns;

  int num_classes() const { return static_cast<int>(partition.num_classes()); }
  /// [X_tr, X_tt].
  Matrix x_all() const;
};

/// Sorts training columns by label (stable), normalizes all columns and
/// derives the partition. num_classes = 0 infers C from the largest training
/// label. Every class 1..C needs at least one training column.
PartitionedDataset assemble_dataset(const Matrix& x_train, const std::vector<int>& train_labels,
                                    const Matrix& x_test, const std::vector<int>& test_labels,
                                    int num_classes = 0);

struct SynthSpec {
  int classes = 5;
  int subspace_dim = 10;
  int ambient_dim = 50;
  int train_per_class = 20;
  int test_per_class = 20;
  double noise_std = 0.05;
  std::uint64_t seed = 7;

  void validate() const;
};

/// Draws, per class, an orthonormal basis (QR of a Gaussian matrix),
/// standard-normal coefficients for the training then test samples, and
/// isotropic noise; columns are normalized afterwards. When `bases` is
/// non-null it receives the class bases (ambient x subspace_dim).
PartitionedDataset synth_union_of_subspaces(const SynthSpec& spec,
                                            std::vector<Matrix>* bases = nullptr);

/// Picks `train_per_class` random columns of every class for training (the
/// rest become test columns) and assembles the result.
PartitionedDataset random_split(const Matrix& x, const std::vector<int>& labels,
                                int train_per_class, std::uint64_t seed);

/// Fraction of equal entries. Throws on empty or mismatched inputs.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace bdlrr
