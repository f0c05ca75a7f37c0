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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bdlrr/dataset.hpp"
#include "bdlrr/solver.hpp"

namespace bdlrr {

/// Pooled labelled data that every trial re-splits at random.
struct PooledData {
  Matrix x;
  std::vector<int> labels;
  int train_per_class = 1;
};

struct ExperimentOptions {
  /// Synthetic generator (its seed is replaced per trial) or pooled data.
  std::variant<SynthSpec, PooledData> source = SynthSpec{};
  SolverConfig solver;
  double gamma = 1.0;
  std::size_t repeats = 10;
  std::uint64_t base_seed = 7;
  /// Also fit LRR representations (dictionary X_tr, noise weight
  /// lrr_lambda, defaulting to lambda3) and the same ridge classifier.
  bool compare_lrr = false;
  std::optional<double> lrr_lambda;
  /// Also classify every test column through the out-of-sample solver.
  bool out_of_sample = false;
  bool keep_histories = false;
  unsigned threads = 1;
};

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double off_block_ratio = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double final_relative_error = 0.0;
  std::optional<double> lrr_accuracy;
  std::optional<double> lrr_off_block_ratio;
  std::optional<double> oos_accuracy;
  std::optional<double> oos_agreement;  ///< share of oos labels equal to the joint labels
  std::optional<ConvergenceHistory> history;
};

struct ExperimentReport {
  std::vector<TrialResult> trials;

  double mean_accuracy() const;
  /// Sample standard deviation (n - 1 denominator); 0 for a single trial.
  double std_accuracy() const;
  std::size_t flagged_nonconverged() const;
  double mean_off_block_ratio() const;

  /// key=value summary (config echo first), then a CSV block of trials.
  void write(std::ostream& out, const std::map<std::string, std::string>& config_echo = {}) const;
};

double mean(const std::vector<double>& values);
double sample_std(const std::vector<double>& values);

/// One trial on an already assembled dataset: solve, fit the ridge
/// classifier on Z_tr, predict Z_tt, plus optional comparisons.
TrialResult run_trial(const PartitionedDataset& data, const ExperimentOptions& options);

/// Trial t uses seed base_seed + t. Throws NumericalError prefixed with the
/// trial index when a solve diverges.
ExperimentReport run_experiment(const ExperimentOptions& options);

struct SweepPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  std::size_t flagged_nonconverged = 0;
};

/// Full grid over (lambda1, lambda2[, lambda3]) with everything else from
/// `options`. An empty lambda3 grid keeps options.solver.lambda3.
std::vector<SweepPoint> sweep_parameters(const ExperimentOptions& options,
                                         const std::vector<double>& lambda1_grid,
                                         const std::vector<double>& lambda2_grid,
                                         const std::vector<double>& lambda3_grid = {});

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace bdlrr
