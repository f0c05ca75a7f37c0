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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bdlrr/matrix.hpp"
#include "bdlrr/structure.hpp"

namespace bdlrr {

/// Linear classifier W (C x n) fitted on training representations.
struct TrainedModel {
  Matrix W;
  double gamma = 0.0;
  ClassPartition partition{{1}};
  Matrix z_train;

  std::size_t num_classes() const { return static_cast<std::size_t>(W.rows()); }
};

/// C x n indicator matrix; column j has a one in row labels[j] - 1.
Matrix one_hot(const std::vector<int>& labels, int num_classes);

/// W = L Z^T (Z Z^T + gamma I)^{-1}, solved through a Cholesky factor of
/// the SPD system. The stored partition holds the per-class counts of L.
/// Throws NumericalError when gamma == 0 and Z Z^T is singular.
TrainedModel fit_ridge(const Matrix& z_train, const Matrix& label_matrix, double gamma);

/// Index (1-based) of the largest entry; ties resolve to the lowest index.
int argmax_label(const Eigen::Ref<const Vector>& scores);

/// One label per column of z_test.
std::vector<int> predict(const TrainedModel& model, const Matrix& z_test);

/// Writes W.txt, Z_tr.txt and model.txt (gamma=, classes=, class_sizes=,
/// followed by any `extra` key=value lines).
void save_model(const TrainedModel& model, const std::filesystem::path& dir,
                const std::map<std::string, std::string>& extra = {});
TrainedModel load_model(const std::filesystem::path& dir);

}  // namespace bdlrr
