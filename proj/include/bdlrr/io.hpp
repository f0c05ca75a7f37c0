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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bdlrr/matrix.hpp"

namespace bdlrr {

/// Shortest-form-independent rendering with `significant` digits
/// (17 round-trips every double).
std::string format_double(double value, int significant = 17);

// Matrix text format:
//   line 1: "rows cols"
//   then `rows` lines of `cols` whitespace-separated decimals.
// Lines starting with '#' and blank lines are ignored.

void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);
void save_matrix(const Matrix& m, const std::filesystem::path& path);
Matrix load_matrix(const std::filesystem::path& path);

// One integer label per line.
void write_labels(std::ostream& out, const std::vector<int>& labels);
std::vector<int> read_labels(std::istream& in);
void save_labels(const std::vector<int>& labels, const std::filesystem::path& path);
std::vector<int> load_labels(const std::filesystem::path& path);

/// `key=value` lines; '#' comments and blank lines skipped.
std::map<std::string, std::string> read_key_values(std::istream& in);
std::map<std::string, std::string> load_key_values(const std::filesystem::path& path);

double parse_double(const std::string& token, std::size_t line = 0);
long long parse_int(const std::string& token, std::size_t line = 0);

}  // namespace bdlrr
