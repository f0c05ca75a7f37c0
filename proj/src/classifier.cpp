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

#include "bdlrr/classifier.hpp"

#include <fstream>
#include <sstream>

#include "bdlrr/io.hpp"

namespace bdlrr {

Matrix one_hot(const std::vector<int>& labels, int num_classes) {
  if (num_classes < 1) throw ValidationError("number of classes must be positive");
  if (labels.empty()) throw ValidationError("label list is empty");
  Matrix l = Matrix::Zero(num_classes, static_cast<Eigen::Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const int c = labels[j];
    if (c < 1 || c > num_classes) {
      throw ValidationError("label " + std::to_string(c) + " at position " +
                            std::to_string(j + 1) + " outside 1.." +
                            std::to_string(num_classes));
    }
    l(c - 1, static_cast<Eigen::Index>(j)) = 1.0;
  }
  return l;
}

TrainedModel fit_ridge(const Matrix& z_train, const Matrix& label_matrix, double gamma) {
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be nonnegative");
  require_finite(z_train, "Z_tr");
  require_finite(label_matrix, "label matrix");
  if (label_matrix.cols() != z_train.cols()) {
    throw DimensionError("label matrix has " + std::to_string(label_matrix.cols()) +
                         " columns, Z_tr has " + std::to_string(z_train.cols()));
  }
  Matrix system = z_train * z_train.transpose();
  system.diagonal().array() += gamma;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
    throw NumericalError("ridge system Z Z^T + gamma I is singular; use gamma > 0");
  }
  TrainedModel model;
  model.W = llt.solve(z_train * label_matrix.transpose()).transpose();
  model.gamma = gamma;
  std::vector<std::size_t> counts(static_cast<std::size_t>(label_matrix.rows()));
  for (Eigen::Index c = 0; c < label_matrix.rows(); ++c) {
    counts[static_cast<std::size_t>(c)] = static_cast<std::size_t>(
        (label_matrix.row(c).array() != 0.0).count());
  }
  model.partition = ClassPartition(std::move(counts));
  model.z_train = z_train;
  return model;
}

int argmax_label(const Eigen::Ref<const Vector>& scores) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return static_cast<int>(best) + 1;
}

std::vector<int> predict(const TrainedModel& model, const Matrix& z_test) {
  if (z_test.rows() != model.W.cols()) {
    throw DimensionError("representation has " + std::to_string(z_test.rows()) +
                         " rows, classifier expects " + std::to_string(model.W.cols()));
  }
  const Matrix scores = model.W * z_test;
  std::vector<int> labels(static_cast<std::size_t>(z_test.cols()));
  for (Eigen::Index j = 0; j < scores.cols(); ++j) {
    labels[static_cast<std::size_t>(j)] = argmax_label(scores.col(j));
  }
  return labels;
}

void save_model(const TrainedModel& model, const std::filesystem::path& dir,
                const std::map<std::string, std::string>& extra) {
  std::filesystem::create_directories(dir);
  save_matrix(model.W, dir / "W.txt");
  save_matrix(model.z_train, dir / "Z_tr.txt");
  std::ofstream meta(dir / "model.txt", std::ios::binary | std::ios::trunc);
  if (!meta) throw std::runtime_error("cannot write " + (dir / "model.txt").string());
  meta << "gamma=" << format_double(model.gamma) << '\n';
  meta << "classes=" << model.partition.num_classes() << '\n';
  meta << "class_sizes=";
  for (std::size_t c = 0; c < model.partition.num_classes(); ++c) {
    meta << (c ? "," : "") << model.partition.size(c);
  }
  meta << '\n';
  for (const auto& [k, v] : extra) meta << k << '=' << v << '\n';
}

TrainedModel load_model(const std::filesystem::path& dir) {
  const auto kv = load_key_values(dir / "model.txt");
  auto field = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("model.txt is missing '" + key + "='", 0);
    return it->second;
  };
  TrainedModel model;
  model.gamma = parse_double(field("gamma"));
  const auto classes = parse_int(field("classes"));
  std::vector<std::size_t> sizes;
  std::stringstream ss(field("class_sizes"));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto v = parse_int(tok);
    if (v < 1) throw ParseError("class_sizes entries must be positive", 0);
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (static_cast<long long>(sizes.size()) != classes) {
    throw ParseError("class_sizes lists " + std::to_string(sizes.size()) +
                         " classes, classes=" + std::to_string(classes),
                     0);
  }
  model.partition = ClassPartition(std::move(sizes));
  model.W = load_matrix(dir / "W.txt");
  model.z_train = load_matrix(dir / "Z_tr.txt");
  if (model.W.rows() != classes || model.W.cols() != model.z_train.rows()) {
    throw DimensionError("W is " + shape_string(model.W) + ", inconsistent with model.txt " +
                         "and Z_tr " + shape_string(model.z_train));
  }
  return model;
}

}  // namespace bdlrr
