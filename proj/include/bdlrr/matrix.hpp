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

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "bdlrr/errors.hpp"

namespace bdlrr {

// Column-major dense storage is Eigen's default; every sample is a column.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws ValidationError if `m` is empty or holds NaN/Inf.
void require_finite(const Matrix& m, std::string_view name);

/// Throws DimensionError unless `m` is rows x cols.
void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                   std::string_view name);

/// Max absolute row sum, ||M||_inf = max_i sum_j |m_ij|.
double max_row_sum_norm(const Matrix& m);

std::string shape_string(const Matrix& m);

}  // namespace bdlrr
