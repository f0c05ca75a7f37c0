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

// End-to-end checks of the command-line tool. The binary path comes from
// the build (BDLRR_CLI_PATH); every case works in its own scratch directory.

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "bdlrr/io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace bdlrr;
using namespace bdlrr::testing;

namespace {

class Scratch {
 public:
  explicit Scratch(const std::string& name)
      : dir_(fs::temp_directory_path() / ("bdlrr_cli_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  fs::path operator/(const std::string& leaf) const { return dir_ / leaf; }

 private:
  fs::path dir_;
};

int run(const std::string& args) {
  const std::string cmd = std::string(BDLRR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const fs::path& path) {
  std::size_t n = 0;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::string value_of(const fs::path& path, const std::string& key) {
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

// Three classes on coordinate blocks of R^9 with positive coefficients.
void write_separable(const fs::path& dir, int train_per_class, int test_per_class) {
  std::mt19937_64 gen(5);
  const int per = train_per_class + test_per_class;
  Matrix x_tr = Matrix::Zero(9, 3 * train_per_class), x_tt = Matrix::Zero(9, 3 * test_per_class);
  std::vector<int> l_tr, l_tt;
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < per; ++k) {
      const Matrix v = random_matrix(gen, 3, 1).cwiseAbs().array() + 0.1;
      if (k < train_per_class) {
        x_tr.block(3 * c, c * train_per_class + k, 3, 1) = v;
        l_tr.push_back(c + 1);
      } else {
        x_tt.block(3 * c, c * test_per_class + k - train_per_class, 3, 1) = v;
        l_tt.push_back(c + 1);
      }
    }
  }
  fs::create_directories(dir);
  save_matrix(x_tr, dir / "X_tr.txt");
  save_matrix(x_tt, dir / "X_tt.txt");
  save_labels(l_tr, dir / "train_labels.txt");
  save_labels(l_tt, dir / "test_labels.txt");
}

}  // namespace

TEST_CASE("cli synth: deterministic output and shapes") {
  Scratch s("synth");
  REQUIRE(run("synth --seed 7 --out " + (s / "a").string()) == 0);
  REQUIRE(run("synth --seed 7 --out " + (s / "b").string()) == 0);
  for (const char* f : {"X_tr.txt", "X_tt.txt", "train_labels.txt", "test_labels.txt",
                        "manifest.txt"}) {
    CHECK(slurp(s / "a" / f) == slurp(s / "b" / f));
  }
  REQUIRE(run("synth --classes 5 --train 20 --test 20 --out " + (s / "c").string()) == 0);
  CHECK(load_matrix(s / "c" / "X_tr.txt").cols() == 100);
  CHECK(value_of(s / "c" / "manifest.txt", "subspace_dim") == "10");
  CHECK(value_of(s / "c" / "manifest.txt", "noise") == "0.05");
}

TEST_CASE("cli: usage errors exit nonzero") {
  Scratch s("usage");
  CHECK(run("synth --subspace-dim 60 --ambient 50 --out " + (s / "x").string()) != 0);
  CHECK(run("synth --no-such-flag 1 --out " + (s / "x").string()) != 0);
  CHECK(run("") != 0);
  CHECK(run("train --data " + (s / "missing").string() + " --out " + (s / "m").string()) != 0);
  CHECK(run("train --lambda3 0 --data x --out y") != 0);
}

TEST_CASE("cli train: separable data, echo, history and determinism") {
  Scratch s("train");
  write_separable(s / "data", 6, 4);
  const std::string base = "train --data " + (s / "data").string() + " --out ";
  REQUIRE(run(base + (s / "m1").string()) == 0);
  REQUIRE(run(base + (s / "m2").string()) == 0);
  for (const char* f : {"W.txt", "Z_tr.txt", "model.txt", "Z.txt", "E.txt", "history.csv",
                        "predictions.txt", "report.txt"}) {
    CHECK(slurp(s / "m1" / f) == slurp(s / "m2" / f));
  }
  const fs::path report = s / "m1" / "report.txt";
  CHECK(value_of(report, "accuracy") == "1");
  CHECK(value_of(report, "lambda1") == "5");
  CHECK(value_of(report, "lambda2") == "0.5");
  CHECK(value_of(report, "lambda3") == "15");
  CHECK(value_of(report, "gamma") == "1");
  CHECK(value_of(report, "tol") == "1e-06");

  // Last history row meets the tolerance unless the run is flagged.
  std::ifstream hist(s / "m1" / "history.csv");
  std::string line, last;
  while (std::getline(hist, line)) last = line;
  std::vector<double> fields;
  std::stringstream ss(last);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(parse_double(f));
  REQUIRE(fields.size() == 6);
  const double max_res = std::max({fields[2], fields[3], fields[4]});
  CHECK((max_res <= 1e-6 || value_of(report, "converged") == "0"));
}

TEST_CASE("cli train: non-convergence is flagged with exit code 0") {
  Scratch s("flag");
  write_separable(s / "data", 6, 4);
  REQUIRE(run("train --max-iter 3 --data " + (s / "data").string() + " --out " +
              (s / "m").string()) == 0);
  CHECK(value_of(s / "m" / "report.txt", "converged") == "0");
  CHECK(value_of(s / "m" / "report.txt", "max_iter") == "3");
}

TEST_CASE("cli predict and oos") {
  Scratch s("oos");
  write_separable(s / "data", 6, 4);
  REQUIRE(run("train --data " + (s / "data").string() + " --out " + (s / "m").string()) == 0);
  const Matrix x_tt = load_matrix(s / "data" / "X_tt.txt");
  save_matrix(x_tt.leftCols(5), s / "five.txt");
  REQUIRE(run("oos --model " + (s / "m").string() + " --input " + (s / "five.txt").string() +
              " --out " + (s / "oos.txt").string()) == 0);
  CHECK(count_lines(s / "oos.txt") == 5);

  const Matrix z = load_matrix(s / "m" / "Z.txt");
  save_matrix(z.rightCols(12), s / "z_tt.txt");
  REQUIRE(run("predict --model " + (s / "m").string() + " --z " + (s / "z_tt.txt").string() +
              " --out " + (s / "pred.txt").string()) == 0);
  CHECK(slurp(s / "pred.txt") == slurp(s / "m" / "predictions.txt"));
}

TEST_CASE("cli rpca and lrr") {
  Scratch s("baselines");
  std::mt19937_64 gen(9);
  const Matrix rank1 = random_matrix(gen, 20, 1) * random_matrix(gen, 1, 15);
  save_matrix(rank1, s / "clean.txt");
  REQUIRE(run("rpca --input " + (s / "clean.txt").string() + " --out " + (s / "r").string()) == 0);
  CHECK(load_matrix(s / "r" / "E.txt").cwiseAbs().maxCoeff() <= 1e-4);
  CHECK(value_of(s / "r" / "report.txt", "converged") == "1");

  REQUIRE(run("lrr --lambda 0.5 --input " + (s / "clean.txt").string() + " --out " +
              (s / "l").string()) == 0);
  const Matrix z = load_matrix(s / "l" / "Z.txt");
  CHECK(z.rows() == 15);
  CHECK(z.cols() == 15);
}

TEST_CASE("cli eval: report on pooled separable data and a sweep") {
  Scratch s("eval");
  write_separable(s / "data", 10, 1);
  // Pool training and test columns again; eval re-splits them.
  const Matrix a = load_matrix(s / "data" / "X_tr.txt"), b = load_matrix(s / "data" / "X_tt.txt");
  Matrix pooled(a.rows(), a.cols() + b.cols());
  pooled << a, b;
  std::vector<int> labels = load_labels(s / "data" / "train_labels.txt");
  for (int l : load_labels(s / "data" / "test_labels.txt")) labels.push_back(l);
  save_matrix(pooled, s / "pooled.txt");
  save_labels(labels, s / "labels.txt");
  const std::string source = "--pooled " + (s / "pooled.txt").string() + " --labels " +
                             (s / "labels.txt").string() + " --train-per-class 8";

  REQUIRE(run("eval --repeats 1 " + source + " --out " + (s / "report.txt").string()) == 0);
  CHECK(value_of(s / "report.txt", "mean_accuracy") == "1");
  CHECK(value_of(s / "report.txt", "std_accuracy") == "0");
  CHECK(value_of(s / "report.txt", "repeats") == "1");

  REQUIRE(run("eval --repeats 1 --sweep-lambda1 0.1,5 --sweep-lambda2 0.5 " + source +
              " --out " + (s / "sweep.txt").string()) == 0);
  const std::string sweep = slurp(s / "sweep.txt");
  CHECK(sweep.find("lambda1,lambda2,lambda3,mean_accuracy") != std::string::npos);
  CHECK(count_lines(s / "sweep.txt") > 2);
}
