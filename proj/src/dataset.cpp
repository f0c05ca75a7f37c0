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

#include "bdlrr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace bdlrr {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("uniform_index bound must be positive");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % bound;
}

Matrix Rng::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
  }
  return m;
}

Normalized normalize_columns(const Matrix& m) {
  Normalized out{m, {}};
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm == 0.0) {
      out.zero_columns.push_back(j);
    } else {
      out.matrix.col(j) /= norm;
    }
  }
  return out;
}

Matrix PartitionedDataset::x_all() const {
  Matrix all(x_train.rows(), x_train.cols() + x_test.cols());
  all << x_train, x_test;
  return all;
}

PartitionedDataset assemble_dataset(const Matrix& x_train, const std::vector<int>& train_labels,
                                    const Matrix& x_test, const std::vector<int>& test_labels,
                                    int num_classes) {
  if (static_cast<std::size_t>(x_train.cols()) != train_labels.size()) {
    throw DimensionError("training matrix has " + std::to_string(x_train.cols()) +
                         " columns but " + std::to_string(train_labels.size()) + " labels");
  }
  if (!test_labels.empty() && static_cast<std::size_t>(x_test.cols()) != test_labels.size()) {
    throw DimensionError("test matrix has " + std::to_string(x_test.cols()) +
                         " columns but " + std::to_string(test_labels.size()) + " labels");
  }
  if (x_test.cols() > 0 && x_test.rows() != x_train.rows()) {
    throw DimensionError("training and test samples differ in dimension");
  }
  require_finite(x_train, "X_tr");
  if (x_test.size() > 0 && !x_test.allFinite()) {
    throw ValidationError("X_tt contains non-finite entries");
  }
  if (num_classes == 0) {
    num_classes = *std::max_element(train_labels.begin(), train_labels.end());
  }

  PartitionedDataset ds;
  ds.train_permutation.resize(train_labels.size());
  std::iota(ds.train_permutation.begin(), ds.train_permutation.end(), std::size_t{0});
  std::stable_sort(ds.train_permutation.begin(), ds.train_permutation.end(),
                   [&](std::size_t a, std::size_t b) { return train_labels[a] < train_labels[b]; });

  Matrix sorted(x_train.rows(), x_train.cols());
  ds.train_labels.reserve(train_labels.size());
  for (std::size_t k = 0; k < ds.train_permutation.size(); ++k) {
    const std::size_t src = ds.train_permutation[k];
    sorted.col(static_cast<Eigen::Index>(k)) = x_train.col(static_cast<Eigen::Index>(src));
    ds.train_labels.push_back(train_labels[src]);
  }
  ds.partition = ClassPartition::from_sorted_labels(ds.train_labels, num_classes);
  for (int label : test_labels) {
    if (label < 1 || label > num_classes) {
      throw ValidationError("test label " + std::to_string(label) + " outside 1.." +
                            std::to_string(num_classes));
    }
  }

  Normalized tr = normalize_columns(sorted);
  ds.x_train = std::move(tr.matrix);
  ds.zero_train_columns = std::move(tr.zero_columns);
  if (x_test.cols() > 0) {
    Normalized tt = normalize_columns(x_test);
    ds.x_test = std::move(tt.matrix);
    ds.zero_test_columns = std::move(tt.zero_columns);
  } else {
    ds.x_test = Matrix(x_train.rows(), 0);
  }
  ds.test_labels = test_labels;
  return ds;
}

void SynthSpec::validate() const {
  if (classes < 1) throw ValidationError("classes must be at least 1");
  if (subspace_dim < 1) throw ValidationError("subspace dimension must be at least 1");
  if (subspace_dim >= ambient_dim) {
    throw ValidationError("subspace dimension " + std::to_string(subspace_dim) +
                          " must be smaller than ambient dimension " +
                          std::to_string(ambient_dim));
  }
  if (train_per_class < 1 || test_per_class < 1) {
    throw ValidationError("per-class training and test counts must be at least 1");
  }
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    throw ValidationError("noise standard deviation must be nonnegative");
  }
}

PartitionedDataset synth_union_of_subspaces(const SynthSpec& spec, std::vector<Matrix>* bases) {
  spec.validate();
  Rng rng(spec.seed);
  const Eigen::Index d = spec.ambient_dim;
  const Eigen::Index k = spec.subspace_dim;
  Matrix x_train(d, spec.classes * spec.train_per_class);
  Matrix x_test(d, spec.classes * spec.test_per_class);
  std::vector<int> train_labels, test_labels;
  if (bases) bases->clear();

  for (int c = 0; c < spec.classes; ++c) {
    const Matrix gaussian = rng.normal_matrix(d, k);
    Eigen::HouseholderQR<Matrix> qr(gaussian);
    const Matrix basis = qr.householderQ() * Matrix::Identity(d, k);
    if (bases) bases->push_back(basis);

    auto draw = [&](int count) {
      Matrix samples = basis * rng.normal_matrix(k, count);
      // Noise is always drawn so the stream does not depend on noise_std.
      samples += spec.noise_std * rng.normal_matrix(d, count);
      return samples;
    };
    x_train.middleCols(c * spec.train_per_class, spec.train_per_class) = draw(spec.train_per_class);
    x_test.middleCols(c * spec.test_per_class, spec.test_per_class) = draw(spec.test_per_class);
    train_labels.insert(train_labels.end(), static_cast<std::size_t>(spec.train_per_class), c + 1);
    test_labels.insert(test_labels.end(), static_cast<std::size_t>(spec.test_per_class), c + 1);
  }
  return assemble_dataset(x_train, train_labels, x_test, test_labels, spec.classes);
}

PartitionedDataset random_split(const Matrix& x, const std::vector<int>& labels,
                                int train_per_class, std::uint64_t seed) {
  if (static_cast<std::size_t>(x.cols()) != labels.size()) {
    throw DimensionError("matrix has " + std::to_string(x.cols()) + " columns but " +
                         std::to_string(labels.size()) + " labels");
  }
  if (train_per_class < 1) throw ValidationError("train_per_class must be at least 1");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t j = 0; j < labels.size(); ++j) by_class[labels[j]].push_back(j);
  const int num_classes = by_class.empty() ? 0 : by_class.rbegin()->first;

  Rng rng(seed);
  std::vector<std::size_t> train_idx, test_idx;
  for (auto& [label, idx] : by_class) {
    if (static_cast<int>(idx.size()) <= train_per_class) {
      throw ValidationError("class " + std::to_string(label) + " has " +
                            std::to_string(idx.size()) + " samples; need more than " +
                            std::to_string(train_per_class));
    }
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
    }
    train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + train_per_class);
    test_idx.insert(test_idx.end(), idx.begin() + train_per_class, idx.end());
  }
  std::sort(test_idx.begin(), test_idx.end());

  auto gather = [&](const std::vector<std::size_t>& idx, Matrix& out, std::vector<int>& lab) {
    out.resize(x.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out.col(static_cast<Eigen::Index>(k)) = x.col(static_cast<Eigen::Index>(idx[k]));
      lab.push_back(labels[idx[k]]);
    }
  };
  Matrix x_tr, x_tt;
  std::vector<int> y_tr, y_tt;
  gather(train_idx, x_tr, y_tr);
  gather(test_idx, x_tt, y_tt);
  return assemble_dataset(x_tr, y_tr, x_tt, y_tt, num_classes);
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.empty()) throw ValidationError("accuracy of an empty prediction set");
  if (predicted.size() != truth.size()) {
    throw DimensionError("accuracy: " + std::to_string(predicted.size()) +
                         " predictions vs " + std::to_string(truth.size()) + " labels");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

}  // namespace bdlrr
