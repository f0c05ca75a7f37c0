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

#include "bdlrr/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bdlrr {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string at_line(std::size_t line) {
  return line > 0 ? " at line " + std::to_string(line) : std::string();
}

}  // namespace

std::string format_double(double value, int significant) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, significant);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

double parse_double(const std::string& token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("invalid number '" + token + "'" + at_line(line), line);
  }
  return value;
}

long long parse_int(const std::string& token, std::size_t line) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("invalid integer '" + token + "'" + at_line(line), line);
  }
  return value;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  Eigen::Index rows = 0, cols = 0, row = 0;
  Matrix m;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto tokens = split_ws(line);
    if (!have_header) {
      if (tokens.size() != 2) {
        throw ParseError("matrix header must be 'rows cols'" + at_line(line_no), line_no);
      }
      rows = parse_int(tokens[0], line_no);
      cols = parse_int(tokens[1], line_no);
      if (rows < 1 || cols < 1) {
        throw ParseError("matrix dimensions must be positive" + at_line(line_no), line_no);
      }
      m.resize(rows, cols);
      have_header = true;
      continue;
    }
    if (row >= rows) {
      throw ParseError("more than " + std::to_string(rows) + " data rows" + at_line(line_no),
                       line_no);
    }
    if (static_cast<Eigen::Index>(tokens.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " values, found " +
                           std::to_string(tokens.size()) + at_line(line_no),
                       line_no);
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(row, j) = parse_double(tokens[static_cast<std::size_t>(j)], line_no);
    }
    ++row;
  }
  if (!have_header) throw ParseError("missing matrix header", line_no);
  if (row != rows) {
    throw ParseError("expected " + std::to_string(rows) + " data rows, found " +
                         std::to_string(row),
                     line_no);
  }
  return m;
}

void save_matrix(const Matrix& m, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_matrix(out, m);
}

Matrix load_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

void write_labels(std::ostream& out, const std::vector<int>& labels) {
  for (int l : labels) out << l << '\n';
}

std::vector<int> read_labels(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    labels.push_back(static_cast<int>(parse_int(trim(line), line_no)));
  }
  return labels;
}

void save_labels(const std::vector<int>& labels, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_labels(out, labels);
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels(in);
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key=value" + at_line(line_no), line_no);
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> load_key_values(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_key_values(in);
}

}  // namespace bdlrr
