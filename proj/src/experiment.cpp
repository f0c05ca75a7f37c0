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

#include "bdlrr/experiment.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "bdlrr/baselines.hpp"
#include "bdlrr/classifier.hpp"
#include "bdlrr/io.hpp"
#include "bdlrr/out_of_sample.hpp"

namespace bdlrr {

double mean(const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("mean of an empty set");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

std::vector<double> collect(const std::vector<TrialResult>& trials,
                            double TrialResult::*field) {
  std::vector<double> out;
  out.reserve(trials.size());
  for (const auto& t : trials) out.push_back(t.*field);
  return out;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v, 15) : std::string();
}

PartitionedDataset make_trial_data(const ExperimentOptions& options, std::uint64_t seed) {
  if (const auto* spec = std::get_if<SynthSpec>(&options.source)) {
    SynthSpec s = *spec;
    s.seed = seed;
    return synth_union_of_subspaces(s);
  }
  const auto& pooled = std::get<PooledData>(options.source);
  return random_split(pooled.x, pooled.labels, pooled.train_per_class, seed);
}

}  // namespace

double ExperimentReport::mean_accuracy() const {
  return mean(collect(trials, &TrialResult::accuracy));
}

double ExperimentReport::std_accuracy() const {
  return sample_std(collect(trials, &TrialResult::accuracy));
}

std::size_t ExperimentReport::flagged_nonconverged() const {
  std::size_t n = 0;
  for (const auto& t : trials) n += !t.converged;
  return n;
}

double ExperimentReport::mean_off_block_ratio() const {
  return mean(collect(trials, &TrialResult::off_block_ratio));
}

void ExperimentReport::write(std::ostream& out,
                             const std::map<std::string, std::string>& config_echo) const {
  for (const auto& [k, v] : config_echo) out << k << '=' << v << '\n';
  out << "mean_accuracy=" << format_double(mean_accuracy(), 15) << '\n';
  out << "std_accuracy=" << format_double(std_accuracy(), 15) << '\n';
  out << "trials=" << trials.size() << '\n';
  out << "flagged_nonconverged=" << flagged_nonconverged() << '\n';
  out << "mean_off_block_ratio=" << format_double(mean_off_block_ratio(), 15) << '\n';
  out << "trial,seed,accuracy,off_block_ratio,converged,iterations,final_relative_error,"
         "lrr_accuracy,lrr_off_block_ratio,oos_accuracy,oos_agreement\n";
  for (const auto& t : trials) {
    out << t.trial << ',' << t.seed << ',' << format_double(t.accuracy, 15) << ','
        << format_double(t.off_block_ratio, 15) << ',' << (t.converged ? 1 : 0) << ','
        << t.iterations << ',' << format_double(t.final_relative_error, 15) << ','
        << optional_field(t.lrr_accuracy) << ',' << optional_field(t.lrr_off_block_ratio) << ','
        << optional_field(t.oos_accuracy) << ',' << optional_field(t.oos_agreement) << '\n';
  }
}

TrialResult run_trial(const PartitionedDataset& data, const ExperimentOptions& options) {
  if (data.x_test.cols() == 0) throw ValidationError("trial needs at least one test sample");
  const Matrix x_all = data.x_all();
  const BdlrrResult solved = solve_bdlrr(data.x_train, x_all, data.partition, options.solver);

  TrialResult out;
  out.converged = solved.converged;
  out.iterations = solved.iterations;
  out.final_relative_error =
      solved.history.records.empty() ? 0.0 : solved.history.records.back().relative_error;
  const Matrix labels = one_hot(data.train_labels, data.num_classes());
  const TrainedModel model = fit_ridge(solved.z_train(), labels, options.gamma);
  const std::vector<int> predicted = predict(model, solved.z_test());
  out.accuracy = accuracy(predicted, data.test_labels);
  out.off_block_ratio = off_block_mass_ratio(solved.z_train(), data.partition);
  if (options.keep_histories) out.history = solved.history;

  if (options.compare_lrr) {
    AlmOptions alm{options.solver.tol, options.solver.max_iter, options.solver.rho,
                   options.solver.mu0, options.solver.mu_max};
    const double lam = options.lrr_lambda.value_or(options.solver.lambda3);
    const LrrResult lrr = lrr_solve(x_all, data.x_train, lam, alm);
    const Eigen::Index n = data.x_train.cols();
    const Matrix z_tr = lrr.Z.leftCols(n);
    const TrainedModel lrr_model = fit_ridge(z_tr, labels, options.gamma);
    out.lrr_accuracy = accuracy(predict(lrr_model, lrr.Z.rightCols(x_all.cols() - n)),
                                data.test_labels);
    out.lrr_off_block_ratio = off_block_mass_ratio(z_tr, data.partition);
  }
  if (options.out_of_sample) {
    const auto oos = oos_predict_batch(data.x_test, data.x_train, model,
                                       OosConfig::from_solver(options.solver));
    out.oos_accuracy = accuracy(oos, data.test_labels);
    out.oos_agreement = accuracy(oos, predicted);
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentOptions& options) {
  if (options.repeats < 1) throw ValidationError("repeats must be at least 1");
  options.solver.validate();
  ExperimentReport report;
  report.trials.resize(options.repeats);

  auto run_one = [&](std::size_t t) {
    const std::uint64_t seed = options.base_seed + t;
    try {
      TrialResult r = run_trial(make_trial_data(options, seed), options);
      r.trial = t;
      r.seed = seed;
      report.trials[t] = std::move(r);
    } catch (const NumericalError& e) {
      throw NumericalError("trial " + std::to_string(t) + ": " + e.what());
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.repeats)));
  if (threads == 1) {
    for (std::size_t t = 0; t < options.repeats; ++t) run_one(t);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < options.repeats && !failed; t = next++) {
        try {
          run_one(t);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

std::vector<SweepPoint> sweep_parameters(const ExperimentOptions& options,
                                         const std::vector<double>& lambda1_grid,
                                         const std::vector<double>& lambda2_grid,
                                         const std::vector<double>& lambda3_grid) {
  const std::vector<double> l3_grid =
      lambda3_grid.empty() ? std::vector<double>{options.solver.lambda3} : lambda3_grid;
  std::vector<SweepPoint> points;
  for (double l1 : lambda1_grid) {
    for (double l2 : lambda2_grid) {
      for (double l3 : l3_grid) {
        ExperimentOptions o = options;
        o.solver.lambda1 = l1;
        o.solver.lambda2 = l2;
        o.solver.lambda3 = l3;
        o.compare_lrr = false;
        o.out_of_sample = false;
        const ExperimentReport r = run_experiment(o);
        points.push_back(
            {l1, l2, l3, r.mean_accuracy(), r.std_accuracy(), r.flagged_nonconverged()});
      }
    }
  }
  return points;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "lambda1,lambda2,lambda3,mean_accuracy,std_accuracy,flagged_nonconverged\n";
  for (const auto& p : points) {
    out << format_double(p.lambda1, 15) << ',' << format_double(p.lambda2, 15) << ','
        << format_double(p.lambda3, 15) << ','
        << format_double(p.mean_accuracy, 15) << ',' << format_double(p.std_accuracy, 15)
        << ',' << p.flagged_nonconverged << '\n';
  }
}

}  // namespace bdlrr
