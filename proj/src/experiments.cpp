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

#include "ldpg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ldpg/distribution.hpp"
#include "ldpg/error.hpp"
#include "ldpg/random.hpp"
#include "ldpg/zoo.hpp"

namespace ldpg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string shortest(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("bad number '" + s + "'");
  }
  return v;
}

Json parse_toml_scalar(const std::string& text, int line) {
  if (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') && text.back() == text.front()) {
    return text.substr(1, text.size() - 2);
  }
  if (text == "true") return true;
  if (text == "false") return false;
  bool integral = !text.empty();
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '-' || c == '+')))) {
      integral = false;
    }
  }
  try {
    if (integral) return static_cast<std::int64_t>(std::stoll(text));
    return parse_double(text);
  } catch (const std::exception&) {
    throw InvalidArgument("config line " + std::to_string(line) + ": cannot read value '" + text +
                          "'");
  }
}

// Strips a trailing comment outside of string literals.
std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (quote == 0 && (line[i] == '"' || line[i] == '\'')) {
      quote = line[i];
    } else if (line[i] == quote) {
      quote = 0;
    } else if (line[i] == '#' && quote == 0) {
      return line.substr(0, i);
    }
  }
  return line;
}

template <typename T>
std::vector<T> list_of(const Json& v, const char* key) {
  if (!v.is_array()) throw InvalidArgument(std::string("config key ") + key + " needs a list");
  return v.get<std::vector<T>>();
}

struct Point {
  double alpha;
  double epsilon;
  Index n;  // 0: required_sample_size
};

LabeledDistribution noisy_target(const ConceptClass& cls, Index target, double noise) {
  const double per = 1.0 / static_cast<double>(cls.domain_size());
  Eigen::MatrixX2d p(cls.domain_size(), 2);
  for (Index x = 0; x < cls.domain_size(); ++x) {
    const bool plus = cls.value(target, x) > 0;
    p(x, 0) = per * (plus ? 1.0 - noise : noise);
    p(x, 1) = per * (plus ? noise : 1.0 - noise);
  }
  return LabeledDistribution(cls.domain(), p);
}

// One learner per (alpha, epsilon); trials share it.
class PointRunner {
 public:
  PointRunner(const ConceptClass& cls, Task task, const TaskConfig& config) {
    if (task == Task::agnostic) {
      agnostic_ = std::make_unique<AgnosticLearner>(cls, config);
    } else {
      realizable_ = std::make_unique<RealizableLearner>(cls, config);
    }
  }

  // -1 when the learner rejected every concept.
  Index learn(const Dataset& data, std::uint64_t seed) const {
    if (agnostic_) return agnostic_->learn(data, seed).chosen_index;
    try {
      return realizable_->learn(data, seed).chosen_index;
    } catch (const LearningFailure&) {
      return -1;
    }
  }

 private:
  std::unique_ptr<AgnosticLearner> agnostic_;
  std::unique_ptr<RealizableLearner> realizable_;
};

template <typename F>
void parallel_for(Index count, F&& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<Index>(count, hw));
  std::atomic<Index> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (Index i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  if (!(noise >= 0.0 && noise <= 0.5)) throw InvalidArgument("noise must lie in [0, 1/2]");
  for (Index v : n_values) {
    if (v < 1) throw InvalidArgument("n_values must be positive");
  }
  TaskConfig probe = task_config;
  for (double a : alpha_values.empty() ? std::vector<double>{task_config.alpha} : alpha_values) {
    for (double e :
         epsilon_values.empty() ? std::vector<double>{task_config.epsilon} : epsilon_values) {
      probe.alpha = a;
      probe.epsilon = e;
      probe.validate(task);
    }
  }
}

Task parse_task(std::string_view name) {
  if (name == "agnostic") return Task::agnostic;
  if (name == "realizable") return Task::realizable;
  throw InvalidArgument("unknown task '" + std::string(name) + "'");
}

std::string to_string(Task task) { return task == Task::agnostic ? "agnostic" : "realizable"; }

Json json_of(const ExperimentConfig& c) {
  return {{"class", c.class_spec},
          {"task", to_string(c.task)},
          {"alpha", c.task_config.alpha},
          {"beta", c.task_config.beta},
          {"epsilon", c.task_config.epsilon},
          {"theta", c.task_config.theta},
          {"c0", c.task_config.c0},
          {"randomizer", to_string(c.task_config.randomizer)},
          {"sdp_tolerance", c.task_config.sdp.tolerance},
          {"n", c.n},
          {"trials", c.trials},
          {"seed", c.seed},
          {"out", c.out},
          {"noise", c.noise},
          {"target", c.target},
          {"n_values", c.n_values},
          {"epsilon_values", c.epsilon_values},
          {"alpha_values", c.alpha_values},
          {"timings", c.timings}};
}

Json parse_toml_subset(std::istream& in) {
  Json out = Json::object();
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    if (text.front() == '[') {
      throw InvalidArgument("config line " + std::to_string(line) + ": tables are not supported");
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw InvalidArgument("config line " + std::to_string(line) + ": expected key = value");
    }
    if (out.contains(key)) {
      throw InvalidArgument("config line " + std::to_string(line) + ": duplicate key " + key);
    }
    if (value.front() == '[') {
      if (value.back() != ']') {
        throw InvalidArgument("config line " + std::to_string(line) + ": unterminated array");
      }
      Json arr = Json::array();
      std::stringstream items(value.substr(1, value.size() - 2));
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (!item.empty()) arr.push_back(parse_toml_scalar(item, line));
      }
      out[key] = std::move(arr);
    } else {
      out[key] = parse_toml_scalar(value, line);
    }
  }
  return out;
}

Json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path);
  char first = 0;
  while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
  }
  in.clear();
  in.seekg(0);
  if (first == '{') {
    try {
      return Json::parse(in);
    } catch (const Json::exception& e) {
      throw InvalidArgument("cannot parse config " + path + ": " + e.what());
    }
  }
  return parse_toml_subset(in);
}

void apply_config(const Json& values, ExperimentConfig& c) {
  if (!values.is_object()) throw InvalidArgument("config must be a key-value table");
  try {
    for (const auto& [key, v] : values.items()) {
      if (key == "class") {
        c.class_spec = v.get<std::string>();
      } else if (key == "task") {
        c.task = parse_task(v.get<std::string>());
      } else if (key == "alpha") {
        c.task_config.alpha = v.get<double>();
      } else if (key == "beta") {
        c.task_config.beta = v.get<double>();
      } else if (key == "epsilon") {
        c.task_config.epsilon = v.get<double>();
      } else if (key == "theta") {
        c.task_config.theta = v.get<double>();
      } else if (key == "c0") {
        c.task_config.c0 = v.get<double>();
      } else if (key == "randomizer") {
        c.task_config.randomizer = parse_randomizer_kind(v.get<std::string>());
      } else if (key == "sdp_tolerance") {
        c.task_config.sdp.tolerance = v.get<double>();
      } else if (key == "n") {
        c.n = v.get<Index>();
      } else if (key == "trials") {
        c.trials = v.get<Index>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "noise") {
        c.noise = v.get<double>();
      } else if (key == "target") {
        c.target = v.get<std::string>();
      } else if (key == "n_values") {
        c.n_values = list_of<Index>(v, "n_values");
      } else if (key == "epsilon_values") {
        c.epsilon_values = list_of<double>(v, "epsilon_values");
      } else if (key == "alpha_values") {
        c.alpha_values = list_of<double>(v, "alpha_values");
      } else if (key == "timings") {
        c.timings = v.get<bool>();
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
}

ConceptClass load_class(const std::string& spec) {
  if (spec.size() > 5 && spec.ends_with(".json")) return class_from_json(read_json_file(spec));
  return zoo(spec);
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  const ConceptClass cls = load_class(config.class_spec);
  const Index target = config.target.empty() ? -1 : cls.concept_index(config.target);
  const auto alphas =
      config.alpha_values.empty() ? std::vector<double>{config.task_config.alpha} : config.alpha_values;
  const auto epsilons = config.epsilon_values.empty() ? std::vector<double>{config.task_config.epsilon}
                                                      : config.epsilon_values;
  const auto ns = config.n_values.empty() ? std::vector<Index>{config.n} : config.n_values;

  std::vector<TrialRow> rows;
  Index point = 0;
  for (double alpha : alphas) {
    for (double epsilon : epsilons) {
      TaskConfig tc = config.task_config;
      tc.alpha = alpha;
      tc.epsilon = epsilon;
      const PointRunner runner(cls, config.task, tc);
      for (Index n_value : ns) {
        const Index n = n_value > 0 ? n_value : required_sample_size(config.task, cls, tc);
        const std::uint64_t point_seed = derive_seed(config.seed, static_cast<std::uint64_t>(point));
        std::vector<TrialRow> block(static_cast<std::size_t>(config.trials));
        parallel_for(config.trials, [&](Index t) {
          const auto start = std::chrono::steady_clock::now();
          const auto base = static_cast<std::uint64_t>(3 * t);
          const Index c = target >= 0 ? target
                                      : static_cast<Index>(derive_seed(point_seed, base + 2) %
                                                           static_cast<std::uint64_t>(cls.size()));
          const LabeledDistribution dist = noisy_target(cls, c, config.noise);
          const Dataset data = sample(dist, n, derive_seed(point_seed, base));
          const Index chosen = runner.learn(data, derive_seed(point_seed, base + 1));
          TrialRow& row = block[static_cast<std::size_t>(t)];
          row.point_id = "p" + std::to_string(point);
          row.n = n;
          row.epsilon = epsilon;
          row.alpha = alpha;
          row.trial = t;
          if (chosen < 0) {
            row.achieved_loss = std::numeric_limits<double>::quiet_NaN();
          } else {
            row.achieved_loss = population_loss(dist, cls.concept_vector(chosen));
            double best = std::numeric_limits<double>::infinity();
            for (Index k = 0; k < cls.size(); ++k) {
              best = std::min(best, population_loss(dist, cls.concept_vector(k)));
            }
            row.outcome = row.achieved_loss <= best + alpha ? 1 : 0;
          }
          row.runtime_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        });
        rows.insert(rows.end(), block.begin(), block.end());
        ++point;
      }
    }
  }
  return summarize(std::move(rows));
}

RefuteResult run_refute(const ExperimentConfig& config) {
  config.validate();
  const ConceptClass cls = load_class(config.class_spec);
  const TaskConfig& tc = config.task_config;
  const auto draw = derive_seed(config.seed, 2) % static_cast<std::uint64_t>(cls.size());
  const Index target = config.target.empty() ? static_cast<Index>(draw) : cls.concept_index(config.target);
  RefuteResult out;
  out.n = config.n > 0 ? config.n : required_sample_size(config.task, cls, tc);
  out.target = cls.name(target);
  const Dataset data = sample(noisy_target(cls, target, config.noise), out.n, derive_seed(config.seed, 0));
  const std::uint64_t protocol_seed = derive_seed(config.seed, 1);
  if (config.task == Task::agnostic) {
    const AgnosticLearner learner(cls, tc);
    out.min_estimate = learner.estimate_losses(data, protocol_seed).minCoeff();
    out.answer = learner.refute(data, protocol_seed);
  } else {
    const RealizableLearner learner(cls, tc);
    out.min_estimate = learner.shifted_estimates(data, protocol_seed).minCoeff();
    out.answer = learner.refute(data, protocol_seed);
  }
  return out;
}

SweepResult summarize(std::vector<TrialRow> rows) {
  SweepResult out;
  out.rows = std::move(rows);
  std::vector<std::string> order;
  for (const auto& r : out.rows) {
    if (std::find(order.begin(), order.end(), r.point_id) == order.end()) order.push_back(r.point_id);
  }
  for (const auto& id : order) {
    SummaryRow s;
    s.point_id = id;
    Index count = 0;
    Index outputs = 0;
    double successes = 0;
    double squares = 0;
    for (const auto& r : out.rows) {
      if (r.point_id != id) continue;
      s.n = r.n;
      s.epsilon = r.epsilon;
      s.alpha = r.alpha;
      ++count;
      successes += r.outcome;
      if (!std::isnan(r.achieved_loss)) {
        ++outputs;
        squares += r.achieved_loss * r.achieved_loss;
      }
    }
    s.success_rate = successes / static_cast<double>(count);
    s.rmse = outputs > 0 ? std::sqrt(squares / static_cast<double>(outputs))
                         : std::numeric_limits<double>::quiet_NaN();
    out.summaries.push_back(std::move(s));
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : out.summaries) {
    if (s.rmse > 0.0 && s.n > 0) {
      xs.push_back(std::log(static_cast<double>(s.n)));
      ys.push_back(std::log(s.rmse));
    }
  }
  out.slope = std::numeric_limits<double>::quiet_NaN();
  if (xs.size() >= 2) {
    const double k = static_cast<double>(xs.size());
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / k;
      my += ys[i] / k;
    }
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0.0) out.slope = sxy / sxx;
  }
  return out;
}

std::string sweep_csv(const SweepResult& result, bool timings) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : result.rows) {
    out += r.point_id + "," + std::to_string(r.n) + "," + shortest(r.epsilon) + "," +
           shortest(r.alpha) + "," + std::to_string(r.trial) + "," + std::to_string(r.outcome) +
           "," + shortest(r.achieved_loss) + "," + (timings ? shortest(r.runtime_ms) : "") + "\n";
  }
  for (const auto& s : result.summaries) {
    out += s.point_id + "," + std::to_string(s.n) + "," + shortest(s.epsilon) + "," +
           shortest(s.alpha) + ",summary," + shortest(s.success_rate) + "," + shortest(s.rmse) +
           ",\n";
  }
  out += "fit,,,,slope," + shortest(result.slope) + ",,\n";
  return out;
}

std::vector<TrialRow> parse_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw InvalidArgument("sweep CSV header mismatch");
  }
  std::vector<TrialRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    while (f.size() < 8) f.emplace_back();
    if (f[4] == "summary" || f[4] == "slope") continue;
    TrialRow r;
    r.point_id = f[0];
    r.n = std::stoll(f[1]);
    r.epsilon = parse_double(f[2]);
    r.alpha = parse_double(f[3]);
    r.trial = std::stoll(f[4]);
    r.outcome = std::stoi(f[5]);
    r.achieved_loss = f[6].empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(f[6]);
    r.runtime_ms = f[7].empty() ? 0.0 : parse_double(f[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ldpg
