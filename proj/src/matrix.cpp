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

#include "bdlrr/matrix.hpp"

namespace bdlrr {

void require_finite(const Matrix& m, std::string_view name) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw ValidationError(std::string(name) + " must have at least one row and column");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(name) + " contains non-finite entries");
  }
}

void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                   std::string_view name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(std::string(name) + " is " + shape_string(m) + ", expected " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

double max_row_sum_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

std::string shape_string(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace bdlrr
