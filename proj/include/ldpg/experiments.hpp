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

#ifndef LDPG_EXPERIMENTS_HPP_
#define LDPG_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldpg/concept_class.hpp"
#include "ldpg/io.hpp"
#include "ldpg/learners.hpp"

namespace ldpg {

struct ExperimentConfig {
  std::string class_spec = "thresholds(8)";  // zoo spec or path to a class JSON file
  Task task = Task::agnostic;
  TaskConfig task_config;
  Index n = 0;  // 0: required_sample_size
  Index trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  double noise = 0;    // label flip rate of the data distribution
  std::string target;  // concept labeling the data; empty draws one per trial
  std::vector<Index> n_values;
  std::vector<double> epsilon_values;
  std::vector<double> alpha_values;
  bool timings = false;

  /// Throws InvalidArgument for trials < 1, noise outside [0, 1/2] or task
  /// parameters outside their ranges.
  void validate() const;
};

Task parse_task(std::string_view name);
std::string to_string(Task task);

/// Every effective setting, for output metadata.
Json json_of(const ExperimentConfig& config);

/// Flat TOML: `key = value` lines with strings, numbers, booleans and
/// one-line arrays; `#` comments. Tables are rejected.
Json parse_toml_subset(std::istream& in);

/// JSON when the first non-blank character is '{', TOML otherwise.
Json read_config_file(const std::string& path);

/// Overwrites the fields named in `values`; unknown keys are rejected.
void apply_config(const Json& values, ExperimentConfig& config);

/// zoo(spec), or class_from_json of the file when `spec` ends in ".json".
ConceptClass load_class(const std::string& spec);

struct TrialRow {
  std::string point_id;
  Index n = 0;
  double epsilon = 0;
  double alpha = 0;
  Index trial = 0;
  int outcome = 0;  // 1 on success
  double achieved_loss = 0;  // population loss of the output; NaN when the learner failed
  double runtime_ms = 0;
};

struct SummaryRow {
  std::string point_id;
  Index n = 0;
  double epsilon = 0;
  double alpha = 0;
  double success_rate = 0;
  double rmse = 0;  // root mean square achieved loss over trials with an output
};

struct SweepResult {
  std::vector<TrialRow> rows;
  std::vector<SummaryRow> summaries;
  double slope = 0;  // least-squares slope of log rmse against log n; NaN if undefined
};

/// Runs every (alpha, epsilon, n) point for `trials` trials. Trials run in
/// parallel; each draws from seeds derived from (seed, point, trial).
SweepResult run_sweep(const ExperimentConfig& config);

struct RefuteResult {
  int answer = 0;  // +1 or -1
  Index n = 0;
  std::string target;  // concept labeling the data before noise
  double min_estimate = 0;  // smallest estimated loss or shifted estimate
};

/// One refutation on a single sample drawn from the config's data
/// distribution, with the task's refuter.
RefuteResult run_refute(const ExperimentConfig& config);

/// Summary rows and slope recomputed from trial rows alone.
SweepResult summarize(std::vector<TrialRow> rows);

inline constexpr const char* kSweepHeader =
    "point_id,n,epsilon,alpha,trial,outcome,achieved_loss,runtime_ms";

/// Trial rows, then one "summary" row per point (outcome = success rate,
/// achieved_loss = rmse), then a "slope" row.
std::string sweep_csv(const SweepResult& result, bool timings);

/// Trial rows of a sweep CSV; summary rows are skipped.
std::vector<TrialRow> parse_sweep_csv(std::istream& in);

}  // namespace ldpg

#endif  // LDPG_EXPERIMENTS_HPP_
