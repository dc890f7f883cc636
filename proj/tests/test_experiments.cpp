// Copyright 2026 The ldpg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ldpg/error.hpp"
#include "ldpg/experiments.hpp"
#include "ldpg/io.hpp"
#include "ldpg/zoo.hpp"

namespace ldpg {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ldpg_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(LDPG_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Config, TomlSubset) {
  std::istringstream in(
      "# sweep settings\n"
      "class = \"points(3)\"\n"
      "alpha = 0.25   # accuracy\n"
      "trials = 4\n"
      "timings = true\n"
      "n_values = [10, 20, 40]\n"
      "randomizer = 'laplace-l1'\n");
  const Json j = parse_toml_subset(in);
  ExperimentConfig c;
  apply_config(j, c);
  EXPECT_EQ(c.class_spec, "points(3)");
  EXPECT_DOUBLE_EQ(c.task_config.alpha, 0.25);
  EXPECT_EQ(c.trials, 4);
  EXPECT_TRUE(c.timings);
  EXPECT_EQ(c.n_values, (std::vector<Index>{10, 20, 40}));
  EXPECT_EQ(c.task_config.randomizer, RandomizerKind::laplace_l1);
}

TEST(Config, TomlRejectsTablesAndGarbage) {
  std::istringstream table("[section]\nalpha = 0.1\n");
  EXPECT_THROW(parse_toml_subset(table), InvalidArgument);
  std::istringstream garbage("alpha 0.1\n");
  EXPECT_THROW(parse_toml_subset(garbage), InvalidArgument);
}

TEST(Config, UnknownKeysAndValidation) {
  ExperimentConfig c;
  EXPECT_THROW(apply_config(Json{{"alpah", 0.1}}, c), InvalidArgument);
  c.trials = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.trials = 1;
  c.noise = 0.7;
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(parse_task("proper"), InvalidArgument);
  EXPECT_EQ(to_string(parse_task("realizable")), "realizable");
}

TEST(Config, JsonAndTomlFilesAgree) {
  const fs::path dir = scratch_dir("config_files");
  std::ofstream(dir / "a.toml") << "alpha = 0.2\nseed = 7\n";
  std::ofstream(dir / "a.json") << "{\"alpha\": 0.2, \"seed\": 7}\n";
  EXPECT_EQ(read_config_file((dir / "a.toml").string()), read_config_file((dir / "a.json").string()));
}

TEST(Config, LoadClassFromZooOrFile) {
  const fs::path dir = scratch_dir("class_file");
  const ConceptClass cls = zoo("conjunctions(2)");
  write_json_file((dir / "c.json").string(), json_of(cls));
  const ConceptClass back = load_class((dir / "c.json").string());
  EXPECT_EQ(back.names(), cls.names());
  EXPECT_EQ(back.signs(), cls.signs());
  EXPECT_EQ(load_class("thresholds(3)").size(), 4);
}

ExperimentConfig small_sweep() {
  ExperimentConfig c;
  c.class_spec = "thresholds(4)";
  c.n_values = {64, 256};
  c.epsilon_values = {1.0, 2.0};
  c.trials = 5;
  c.seed = 11;
  return c;
}

TEST(Sweep, RowCountAndDeterminism) {
  const ExperimentConfig c = small_sweep();
  const SweepResult a = run_sweep(c);
  EXPECT_EQ(a.rows.size(), 4u * 5u);
  EXPECT_EQ(a.summaries.size(), 4u);
  EXPECT_EQ(sweep_csv(a, false), sweep_csv(run_sweep(c), false));
  ExperimentConfig other = c;
  other.seed = 12;
  EXPECT_NE(sweep_csv(a, false), sweep_csv(run_sweep(other), false));
}

TEST(Sweep, SummariesRecomputeFromRows) {
  const SweepResult a = run_sweep(small_sweep());
  const std::string csv = sweep_csv(a, false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepHeader);
  std::istringstream in(csv);
  const std::vector<TrialRow> rows = parse_sweep_csv(in);
  ASSERT_EQ(rows.size(), a.rows.size());
  const SweepResult b = summarize(rows);
  EXPECT_EQ(sweep_csv(b, false), csv);
  for (const SummaryRow& s : a.summaries) {
    double hits = 0, sq = 0, count = 0;
    for (const TrialRow& r : a.rows) {
      if (r.point_id != s.point_id) continue;
      hits += r.outcome;
      count += 1;
      sq += std::isnan(r.achieved_loss) ? 0.0 : r.achieved_loss * r.achieved_loss;
    }
    EXPECT_DOUBLE_EQ(s.success_rate, hits / count);
    EXPECT_NEAR(s.rmse, std::sqrt(sq / count), 1e-12);
  }
}

TEST(Sweep, SlopeOfKnownPowerLaw) {
  std::vector<TrialRow> rows;
  for (Index n : {100, 400, 1600}) {
    TrialRow r;
    r.point_id = "p" + std::to_string(n);
    r.n = n;
    r.epsilon = 1;
    r.alpha = 0.1;
    r.outcome = 1;
    r.achieved_loss = 1.0 / std::sqrt(static_cast<double>(n));
    rows.push_back(r);
  }
  EXPECT_NEAR(summarize(rows).slope, -0.5, 1e-12);
}

TEST(Cli, ExitCodesAndOutputs) {
  const fs::path dir = scratch_dir("cli");
  const fs::path log = dir / "log.txt";
  EXPECT_EQ(run_cli("gamma2 --class 'thresholds(3)' --alpha 0.1 --out " + (dir / "g.json").string(), log), 0);
  const Json g = read_json_file((dir / "g.json").string());
  EXPECT_NEAR(g["value"].get<double>(), 1.5, 1e-4);
  EXPECT_LE(g["certificate"]["gap"].get<double>(), 1e-6);

  EXPECT_EQ(run_cli("audit --class 'thresholds(3)' --epsilon 1 --out " + (dir / "a.json").string(), log), 0);
  EXPECT_LE(read_json_file((dir / "a.json").string())["max_log_ratio"].get<double>(), 1.0 + 1e-9);

  EXPECT_EQ(run_cli("sweep --class 'thresholds(3)' --trials 0", log), 2);
  EXPECT_EQ(run_cli("gamma2 --class 'nonsense(3)'", log), 2);
  EXPECT_EQ(run_cli("frobnicate", log), 2);
  EXPECT_EQ(run_cli("gamma2 --alpha abc", log), 2);
}

TEST(Cli, RefuterExitCodes) {
  const fs::path dir = scratch_dir("cli_refute");
  const fs::path log = dir / "log.txt";
  const std::string base = "refute --class 'thresholds(4)' --alpha 0.1 --seed 4 ";
  EXPECT_EQ(run_cli(base + "--theta 0.25 --target t2", log), 0) << slurp(log);
  EXPECT_EQ(run_cli(base + "--theta 0.4 --noise 0.5", log), 1) << slurp(log);
  EXPECT_EQ(run_cli(base + "--task realizable --target t1", log), 0) << slurp(log);
  EXPECT_EQ(run_cli(base + "--task realizable --noise 0.5", log), 1) << slurp(log);
  EXPECT_EQ(run_cli(base + "--theta 2", log), 2) << slurp(log);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path dir = scratch_dir("cli_precedence");
  std::ofstream(dir / "c.toml") << "class = \"thresholds(3)\"\nalpha = 0.25\nseed = 3\n";
  const fs::path out = dir / "g.json";
  ASSERT_EQ(run_cli("gamma2 --config " + (dir / "c.toml").string() + " --alpha 0.1 --out " + out.string(),
                    dir / "log.txt"),
            0);
  const Json g = read_json_file(out.string());
  EXPECT_DOUBLE_EQ(g["config"]["alpha"].get<double>(), 0.1);
  EXPECT_EQ(g["config"]["class"].get<std::string>(), "thresholds(3)");
  EXPECT_EQ(g["config"]["seed"].get<int>(), 3);
}

TEST(Cli, RerunsAreByteIdentical) {
  const fs::path dir = scratch_dir("cli_rerun");
  const fs::path log = dir / "log.txt";
  const std::vector<std::string> commands = {
      "witness --class 'points(3)' --alpha 0.1",
      "hardfamily --class 'thresholds(3)' --task realizable --alpha 0.1",
      "simulate --class 'thresholds(4)' --n 200 --trials 4 --seed 9",
      "sweep --class 'thresholds(4)' --n-values 64,256 --trials 3 --seed 9",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    SCOPED_TRACE(commands[i]);
    const fs::path out = dir / ("out" + std::to_string(i));
    ASSERT_EQ(run_cli(commands[i] + " --out " + out.string(), log), 0) << slurp(log);
    const std::string first = slurp(out);
    ASSERT_EQ(run_cli(commands[i] + " --out " + out.string(), log), 0) << slurp(log);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(out));
  }
}

}  // namespace
}  // namespace ldpg
