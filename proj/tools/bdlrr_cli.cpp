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

// Command-line front end: data synthesis, training, prediction,
// out-of-sample solves, the RPCA/LRR baselines and repeated experiments.
//
// Every command writes a report whose first lines echo the fully resolved
// configuration, defaults included, so any output directory describes how
// it was produced.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdlrr/baselines.hpp"
#include "bdlrr/classifier.hpp"
#include "bdlrr/dataset.hpp"
#include "bdlrr/errors.hpp"
#include "bdlrr/experiment.hpp"
#include "bdlrr/io.hpp"
#include "bdlrr/out_of_sample.hpp"
#include "bdlrr/solver.hpp"

namespace fs = std::filesystem;
using namespace bdlrr;

namespace {

using Echo = std::map<std::string, std::string>;

enum ExitCode { kOk = 0, kIoError = 1, kUsageError = 2, kNumericalError = 3 };

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : format_double(v);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += num(values[i]);
  }
  return out;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_report(const fs::path& path, const Echo& echo, const Echo& results) {
  std::ofstream out = open_out(path);
  for (const auto& [k, v] : echo) out << k << '=' << v << '\n';
  for (const auto& [k, v] : results) out << k << '=' << v << '\n';
}

void write_history(const fs::path& path, const ConvergenceHistory& history) {
  std::ofstream out = open_out(path);
  history.write_csv(out);
}

void write_labels_to(const std::string& target, const std::vector<int>& labels) {
  if (target.empty() || target == "-") {
    write_labels(std::cout, labels);
  } else {
    std::ofstream out = open_out(target);
    write_labels(out, labels);
  }
}

// ---------------------------------------------------------------- options

struct SolverFlags {
  SolverConfig config;
  double gamma = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--lambda1", config.lambda1, "off-block penalty");
    app->add_option("--lambda2", config.lambda2, "distance-weighted l1 penalty");
    app->add_option("--lambda3", config.lambda3, "row-group noise penalty");
    app->add_option("--gamma", gamma, "ridge regularization of the classifier");
    app->add_option("--rho", config.rho, "penalty growth factor");
    app->add_option("--mu0", config.mu0, "initial penalty");
    app->add_option("--mu-max", config.mu_max, "penalty cap");
    app->add_option("--tol", config.tol, "max-residual stopping tolerance");
    app->add_option("--max-iter", config.max_iter, "iteration cap");
  }

  void echo(Echo& e) const {
    e["lambda1"] = num(config.lambda1);
    e["lambda2"] = num(config.lambda2);
    e["lambda3"] = num(config.lambda3);
    e["gamma"] = num(gamma);
    e["rho"] = num(config.rho);
    e["mu0"] = num(config.mu0);
    e["mu_max"] = num(config.mu_max);
    e["tol"] = num(config.tol);
    e["max_iter"] = std::to_string(config.max_iter);
  }

  void validate() const {
    config.validate();
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be nonnegative");
  }
};

struct SynthFlags {
  SynthSpec spec;

  void attach(CLI::App* app) {
    app->add_option("--classes", spec.classes, "number of classes");
    app->add_option("--subspace-dim", spec.subspace_dim, "dimension of every class subspace");
    app->add_option("--ambient", spec.ambient_dim, "ambient dimension");
    app->add_option("--train", spec.train_per_class, "training samples per class");
    app->add_option("--test", spec.test_per_class, "test samples per class");
    app->add_option("--noise", spec.noise_std, "noise standard deviation");
    app->add_option("--seed", spec.seed, "random seed");
  }

  void echo(Echo& e) const {
    e["classes"] = std::to_string(spec.classes);
    e["subspace_dim"] = std::to_string(spec.subspace_dim);
    e["ambient"] = std::to_string(spec.ambient_dim);
    e["train"] = std::to_string(spec.train_per_class);
    e["test"] = std::to_string(spec.test_per_class);
    e["noise"] = num(spec.noise_std);
    e["seed"] = std::to_string(spec.seed);
  }
};

struct AlmFlags {
  AlmOptions options;

  void attach(CLI::App* app) {
    app->add_option("--tol", options.tol, "stopping tolerance");
    app->add_option("--max-iter", options.max_iter, "iteration cap");
    app->add_option("--rho", options.rho, "penalty growth factor");
    app->add_option("--mu0", options.mu0, "initial penalty");
    app->add_option("--mu-max", options.mu_max, "penalty cap");
  }

  void echo(Echo& e) const {
    e["tol"] = num(options.tol);
    e["max_iter"] = std::to_string(options.max_iter);
    e["rho"] = num(options.rho);
    e["mu0"] = num(options.mu0);
    e["mu_max"] = num(options.mu_max);
  }
};

// --------------------------------------------------------------- commands

struct SynthCommand {
  SynthFlags flags;
  std::string out;

  int run() const {
    const PartitionedDataset ds = synth_union_of_subspaces(flags.spec);
    const fs::path dir(out);
    fs::create_directories(dir);
    save_matrix(ds.x_train, dir / "X_tr.txt");
    save_matrix(ds.x_test, dir / "X_tt.txt");
    save_labels(ds.train_labels, dir / "train_labels.txt");
    save_labels(ds.test_labels, dir / "test_labels.txt");
    Echo echo;
    flags.echo(echo);
    write_report(dir / "manifest.txt", echo,
                 {{"train_columns", std::to_string(ds.x_train.cols())},
                  {"test_columns", std::to_string(ds.x_test.cols())}});
    return kOk;
  }
};

struct TrainCommand {
  SolverFlags flags;
  std::string data;
  std::string out;

  int run() const {
    flags.validate();
    const fs::path in(data), dir(out);
    const Matrix x_tr = load_matrix(in / "X_tr.txt");
    const Matrix x_tt = load_matrix(in / "X_tt.txt");
    const std::vector<int> train_labels = load_labels(in / "train_labels.txt");
    std::vector<int> test_labels;
    if (fs::exists(in / "test_labels.txt")) test_labels = load_labels(in / "test_labels.txt");

    const PartitionedDataset ds = assemble_dataset(x_tr, train_labels, x_tt, test_labels);
    const BdlrrResult result = solve_bdlrr(ds.x_train, ds.x_all(), ds.partition, flags.config);
    const TrainedModel model =
        fit_ridge(result.z_train(), one_hot(ds.train_labels, ds.num_classes()), flags.gamma);
    const std::vector<int> predicted = predict(model, result.z_test());

    Echo echo{{"data", in.string()}};
    flags.echo(echo);
    fs::create_directories(dir);
    save_model(model, dir,
               {{"lambda1", num(flags.config.lambda1)},
                {"lambda2", num(flags.config.lambda2)},
                {"lambda3", num(flags.config.lambda3)}});
    save_matrix(ds.x_train, dir / "X_tr.txt");
    save_matrix(result.Z, dir / "Z.txt");
    save_matrix(result.E, dir / "E.txt");
    write_history(dir / "history.csv", result.history);
    save_labels(predicted, dir / "predictions.txt");

    Echo results{{"converged", result.converged ? "1" : "0"},
                 {"iterations", std::to_string(result.iterations)},
                 {"off_block_ratio", num(off_block_mass_ratio(result.z_train(), ds.partition))}};
    if (!result.history.records.empty()) {
      results["final_relative_error"] = num(result.history.records.back().relative_error);
      results["final_max_residual"] = num(result.history.records.back().max_residual());
    }
    if (!test_labels.empty()) results["accuracy"] = num(accuracy(predicted, test_labels));
    write_report(dir / "report.txt", echo, results);
    if (!result.converged) {
      std::cerr << "warning: not converged after " << result.iterations << " iterations\n";
    }
    return kOk;
  }
};

struct PredictCommand {
  std::string model;
  std::string z;
  std::string out;

  int run() const {
    const TrainedModel m = load_model(model);
    write_labels_to(out, predict(m, load_matrix(z)));
    return kOk;
  }
};

struct OosCommand {
  std::string model;
  std::string input;
  std::string out;
  std::size_t max_iter = OosConfig{}.max_iter;
  double step_tol = OosConfig{}.step_tol;
  unsigned threads = 1;

  int run() const {
    const fs::path dir(model);
    const TrainedModel m = load_model(dir);
    const Matrix x_tr = load_matrix(dir / "X_tr.txt");
    const auto meta = load_key_values(dir / "model.txt");
    SolverConfig solver;
    for (const auto& [key, target] :
         {std::pair{"lambda1", &solver.lambda1}, {"lambda2", &solver.lambda2},
          {"lambda3", &solver.lambda3}}) {
      const auto it = meta.find(key);
      if (it == meta.end()) throw ParseError(std::string("model.txt is missing '") + key + "='", 0);
      *target = parse_double(it->second);
    }
    OosConfig config = OosConfig::from_solver(solver);
    config.max_iter = max_iter;
    config.step_tol = step_tol;
    const Matrix samples = normalize_columns(load_matrix(input)).matrix;
    write_labels_to(out, oos_predict_batch(samples, x_tr, m, config, threads));
    return kOk;
  }
};

struct RpcaCommand {
  AlmFlags flags;
  std::string input;
  std::string out;
  double lambda = 0.0;  // 0 selects 1 / sqrt(max(rows, cols))

  int run() const {
    const Matrix x = load_matrix(input);
    const double l = lambda > 0.0 ? lambda : rpca_default_lambda(x);
    const RpcaResult r = rpca_solve(x, l, flags.options);
    const fs::path dir(out);
    fs::create_directories(dir);
    save_matrix(r.low_rank, dir / "X0.txt");
    save_matrix(r.sparse, dir / "E.txt");
    write_history(dir / "history.csv", r.history);
    Echo echo{{"input", input}, {"lambda", num(l)}};
    flags.echo(echo);
    write_report(dir / "report.txt", echo,
                 {{"converged", r.converged ? "1" : "0"},
                  {"iterations", std::to_string(r.iterations)}});
    return kOk;
  }
};

struct LrrCommand {
  AlmFlags flags;
  std::string input;
  std::string dictionary;
  std::string out;
  double lambda = SolverConfig{}.lambda3;

  int run() const {
    const Matrix x = load_matrix(input);
    const Matrix dict = dictionary.empty() ? x : load_matrix(dictionary);
    const LrrResult r = lrr_solve(x, dict, lambda, flags.options);
    const fs::path dir(out);
    fs::create_directories(dir);
    save_matrix(r.Z, dir / "Z.txt");
    save_matrix(r.E, dir / "E.txt");
    write_history(dir / "history.csv", r.history);
    Echo echo{{"input", input},
              {"dictionary", dictionary.empty() ? input : dictionary},
              {"lambda", num(lambda)}};
    flags.echo(echo);
    write_report(dir / "report.txt", echo,
                 {{"converged", r.converged ? "1" : "0"},
                  {"iterations", std::to_string(r.iterations)}});
    return kOk;
  }
};

struct EvalCommand {
  SolverFlags solver;
  SynthFlags synth;
  std::string pooled;
  std::string labels;
  int train_per_class = 0;
  std::size_t repeats = 10;
  bool compare_lrr = false;
  bool out_of_sample = false;
  unsigned threads = 1;
  std::vector<double> sweep1, sweep2, sweep3;
  std::string out;

  int run() const {
    solver.validate();
    ExperimentOptions o;
    o.solver = solver.config;
    o.gamma = solver.gamma;
    o.repeats = repeats;
    o.base_seed = synth.spec.seed;
    o.compare_lrr = compare_lrr;
    o.out_of_sample = out_of_sample;
    o.threads = threads;

    Echo echo;
    solver.echo(echo);
    if (!pooled.empty()) {
      if (labels.empty() || train_per_class < 1) {
        throw ValidationError("--pooled needs --labels and a positive --train-per-class");
      }
      o.source = PooledData{load_matrix(pooled), load_labels(labels), train_per_class};
      echo["pooled"] = pooled;
      echo["labels"] = labels;
      echo["train_per_class"] = std::to_string(train_per_class);
      echo["seed"] = std::to_string(synth.spec.seed);
    } else {
      synth.spec.validate();
      o.source = synth.spec;
      synth.echo(echo);
    }
    echo["repeats"] = std::to_string(repeats);
    echo["compare_lrr"] = compare_lrr ? "1" : "0";
    echo["oos"] = out_of_sample ? "1" : "0";
    echo["threads"] = std::to_string(threads);

    std::ofstream report = open_out(out);
    const bool sweeping = !sweep1.empty() || !sweep2.empty() || !sweep3.empty();
    if (sweeping) {
      const std::vector<double> g1 = sweep1.empty() ? std::vector{o.solver.lambda1} : sweep1;
      const std::vector<double> g2 = sweep2.empty() ? std::vector{o.solver.lambda2} : sweep2;
      echo["sweep_lambda1"] = join(g1);
      echo["sweep_lambda2"] = join(g2);
      echo["sweep_lambda3"] = join(sweep3.empty() ? std::vector{o.solver.lambda3} : sweep3);
      for (const auto& [k, v] : echo) report << k << '=' << v << '\n';
      write_sweep_csv(report, sweep_parameters(o, g1, g2, sweep3));
    } else {
      const ExperimentReport r = run_experiment(o);
      r.write(report, echo);
      if (r.flagged_nonconverged() > 0) {
        std::cerr << "warning: " << r.flagged_nonconverged() << " trial(s) did not converge\n";
      }
    }
    return kOk;
  }
};

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-diagonal low-rank representation learning"};
  app.require_subcommand(1);

  SynthCommand synth;
  CLI::App* c_synth = app.add_subcommand("synth", "generate a union-of-subspaces dataset");
  synth.flags.attach(c_synth);
  c_synth->add_option("--out", synth.out, "output directory")->required();

  TrainCommand train;
  CLI::App* c_train = app.add_subcommand("train", "learn representations and the classifier");
  train.flags.attach(c_train);
  c_train->add_option("--data", train.data, "dataset directory (X_tr.txt, X_tt.txt, labels)")
      ->required();
  c_train->add_option("--out", train.out, "output directory")->required();

  PredictCommand predict_cmd;
  CLI::App* c_predict = app.add_subcommand("predict", "classify precomputed representations");
  c_predict->add_option("--model", predict_cmd.model, "model directory")->required();
  c_predict->add_option("--z", predict_cmd.z, "n x m representation matrix")->required();
  c_predict->add_option("--out", predict_cmd.out, "label file (default: stdout)");

  OosCommand oos;
  CLI::App* c_oos = app.add_subcommand("oos", "classify new samples against a trained model");
  c_oos->add_option("--model", oos.model, "model directory written by train")->required();
  c_oos->add_option("--input", oos.input, "d x m matrix of samples")->required();
  c_oos->add_option("--out", oos.out, "label file (default: stdout)");
  c_oos->add_option("--max-iter", oos.max_iter, "proximal-gradient iteration cap");
  c_oos->add_option("--step-tol", oos.step_tol, "stop when the iterate moves less than this");
  c_oos->add_option("--threads", oos.threads, "worker threads")->check(CLI::PositiveNumber);

  RpcaCommand rpca;
  CLI::App* c_rpca = app.add_subcommand("rpca", "robust PCA baseline");
  rpca.flags.attach(c_rpca);
  c_rpca->add_option("--input", rpca.input, "input matrix")->required();
  c_rpca->add_option("--lambda", rpca.lambda, "sparse weight (default 1/sqrt(max dim))");
  c_rpca->add_option("--out", rpca.out, "output directory")->required();

  LrrCommand lrr;
  CLI::App* c_lrr = app.add_subcommand("lrr", "low-rank representation baseline");
  lrr.flags.attach(c_lrr);
  c_lrr->add_option("--input", lrr.input, "input matrix")->required();
  c_lrr->add_option("--dictionary", lrr.dictionary, "dictionary (default: the input)");
  c_lrr->add_option("--lambda", lrr.lambda, "noise weight");
  c_lrr->add_option("--out", lrr.out, "output directory")->required();

  EvalCommand eval;
  CLI::App* c_eval = app.add_subcommand("eval", "repeated train/test experiments");
  eval.solver.attach(c_eval);
  eval.synth.attach(c_eval);
  c_eval->add_option("--pooled", eval.pooled, "pooled data matrix instead of synthetic data");
  c_eval->add_option("--labels", eval.labels, "labels of the pooled columns");
  c_eval->add_option("--train-per-class", eval.train_per_class, "training columns per class");
  c_eval->add_option("--repeats", eval.repeats, "number of random splits");
  c_eval->add_flag("--compare-lrr", eval.compare_lrr, "also evaluate LRR representations");
  c_eval->add_flag("--oos", eval.out_of_sample, "also classify through the out-of-sample solver");
  c_eval->add_option("--threads", eval.threads, "worker threads")->check(CLI::PositiveNumber);
  c_eval->add_option("--sweep-lambda1", eval.sweep1, "lambda1 grid")->delimiter(',');
  c_eval->add_option("--sweep-lambda2", eval.sweep2, "lambda2 grid")->delimiter(',');
  c_eval->add_option("--sweep-lambda3", eval.sweep3, "lambda3 grid")->delimiter(',');
  c_eval->add_option("--out", eval.out, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (*c_synth) return guarded([&] { return synth.run(); });
  if (*c_train) return guarded([&] { return train.run(); });
  if (*c_predict) return guarded([&] { return predict_cmd.run(); });
  if (*c_oos) return guarded([&] { return oos.run(); });
  if (*c_rpca) return guarded([&] { return rpca.run(); });
  if (*c_lrr) return guarded([&] { return lrr.run(); });
  if (*c_eval) return guarded([&] { return eval.run(); });
  return kUsageError;
}
