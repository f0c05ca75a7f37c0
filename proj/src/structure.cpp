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

#include "bdlrr/structure.hpp"

#include <algorithm>
#include <string>

namespace bdlrr {

ClassPartition::ClassPartition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw ValidationError("class partition needs at least one class");
  offsets_.reserve(sizes_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t c = 0; c < sizes_.size(); ++c) {
    if (sizes_[c] == 0) {
      throw ValidationError("class " + std::to_string(c + 1) + " has no training samples");
    }
    offsets_.push_back(offsets_.back() + sizes_[c]);
  }
}

ClassPartition ClassPartition::from_sorted_labels(const std::vector<int>& labels,
                                                  int num_classes) {
  if (num_classes < 1) throw ValidationError("number of classes must be positive");
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_classes), 0);
  int previous = 1;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const int label = labels[j];
    if (label < 1 || label > num_classes) {
      throw ValidationError("label " + std::to_string(label) + " at position " +
                            std::to_string(j + 1) + " outside 1.." +
                            std::to_string(num_classes));
    }
    if (label < previous) {
      throw ValidationError("training labels are not class-sorted at position " +
                            std::to_string(j + 1));
    }
    previous = label;
    ++sizes[static_cast<std::size_t>(label - 1)];
  }
  return ClassPartition(std::move(sizes));
}

std::vector<int> ClassPartition::labels() const {
  std::vector<int> out;
  out.reserve(total());
  for (std::size_t c = 0; c < sizes_.size(); ++c) {
    out.insert(out.end(), sizes_[c], static_cast<int>(c + 1));
  }
  return out;
}

Matrix build_block_mask(const ClassPartition& p) {
  const auto n = static_cast<Eigen::Index>(p.total());
  Matrix y = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < p.num_classes(); ++c) {
    const auto off = static_cast<Eigen::Index>(p.offset(c));
    const auto len = static_cast<Eigen::Index>(p.size(c));
    y.block(off, off, len, len).setOnes();
  }
  return y;
}

Matrix build_offblock_mask(const ClassPartition& p) {
  return Matrix::Ones(static_cast<Eigen::Index>(p.total()),
                      static_cast<Eigen::Index>(p.total())) -
         build_block_mask(p);
}

Matrix extend_offblock_mask(const Matrix& offblock, Eigen::Index total_samples) {
  const Eigen::Index n = offblock.rows();
  if (offblock.cols() != n) {
    throw DimensionError("off-block mask must be square, got " + shape_string(offblock));
  }
  if (total_samples < n) {
    throw DimensionError("total sample count " + std::to_string(total_samples) +
                         " is smaller than training count " + std::to_string(n));
  }
  Matrix out = Matrix::Ones(n, total_samples);
  out.leftCols(n) = offblock;
  return out;
}

Matrix build_distance(const Matrix& x_train, const Matrix& x_all) {
  if (x_train.rows() != x_all.rows()) {
    throw DimensionError("distance: training data has " + std::to_string(x_train.rows()) +
                         " rows, samples have " + std::to_string(x_all.rows()));
  }
  const Vector train_sq = x_train.colwise().squaredNorm().transpose();
  const Vector all_sq = x_all.colwise().squaredNorm().transpose();
  Matrix d = -2.0 * (x_train.transpose() * x_all);
  d.colwise() += train_sq;
  d.rowwise() += all_sq.transpose();
  d = d.cwiseMax(0.0);
  for (Eigen::Index j = 0; j < x_all.cols(); ++j) {
    for (Eigen::Index i = 0; i < x_train.cols(); ++i) {
      if (x_train.col(i) == x_all.col(j)) d(i, j) = 0.0;
    }
  }
  return d;
}

Matrix block_target(const Matrix& block_mask, const Matrix& z) {
  const Eigen::Index n = block_mask.rows();
  if (block_mask.cols() != n) {
    throw DimensionError("block mask must be square, got " + shape_string(block_mask));
  }
  if (z.rows() != n || z.cols() < n) {
    throw DimensionError("block target: Z is " + shape_string(z) + ", mask is " +
                         shape_string(block_mask));
  }
  Matrix r = Matrix::Zero(n, z.cols());
  r.leftCols(n) = block_mask.cwiseProduct(z.leftCols(n));
  return r;
}

double off_block_mass_ratio(const Matrix& z_train, const ClassPartition& p) {
  const auto n = static_cast<Eigen::Index>(p.total());
  require_shape(z_train, n, n, "Z_tr");
  const double total = z_train.squaredNorm();
  if (total == 0.0) {
    throw ValidationError("off-block mass ratio undefined for an all-zero representation");
  }
  return build_offblock_mask(p).cwiseProduct(z_train).squaredNorm() / total;
}

}  // namespace bdlrr
