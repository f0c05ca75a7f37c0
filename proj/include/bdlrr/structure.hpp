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

#include "bdlrr/matrix.hpp"

namespace bdlrr {

/// Ordered class sizes n_1..n_C. Training columns of class c occupy the
/// contiguous range [offset(c), offset(c) + size(c)).
class ClassPartition {
 public:
  /// Throws ValidationError when `sizes` is empty or holds a zero.
  explicit ClassPartition(std::vector<std::size_t> sizes);

  /// Builds the partition from class-sorted labels in 1..C. Every class in
  /// 1..C must occur and labels must be nondecreasing.
  static ClassPartition from_sorted_labels(const std::vector<int>& labels,
                                           int num_classes);

  std::size_t num_classes() const { return sizes_.size(); }
  std::size_t total() const { return offsets_.back(); }
  std::size_t size(std::size_t c) const { return sizes_.at(c); }
  std::size_t offset(std::size_t c) const { return offsets_.at(c); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  /// 1-based class label of every column, in order.
  std::vector<int> labels() const;

  bool operator==(const ClassPartition&) const = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
};

/// Y: n x n block-diagonal mask with all-ones class blocks.
Matrix build_block_mask(const ClassPartition& p);

/// A = 1 1^T - Y.
Matrix build_offblock_mask(const ClassPartition& p);

/// [A, 1_n 1_{N-n}^T]; the test columns carry a plain Frobenius penalty.
Matrix extend_offblock_mask(const Matrix& offblock, Eigen::Index total_samples);

/// D_ij = ||x_tr_i - x_j||^2 (n x N). Computed as |a|^2 + |b|^2 - 2 a.b and
/// clamped at zero; entries where the columns coincide bit-for-bit are 0.
Matrix build_distance(const Matrix& x_train, const Matrix& x_all);

/// R = [Y, 0] o Z.
Matrix block_target(const Matrix& block_mask, const Matrix& z);

/// ||A o Z_tr||_F^2 / ||Z_tr||_F^2. Throws ValidationError for an all-zero
/// Z_tr, DimensionError if Z_tr is not n x n.
double off_block_mass_ratio(const Matrix& z_train, const ClassPartition& p);

}  // namespace bdlrr
