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

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ldpg/error.hpp"
#include "ldpg/experiments.hpp"
#include "ldpg/factor_norms.hpp"
#include "ldpg/hard_instances.hpp"
#include "ldpg/io.hpp"
#include "ldpg/ldp.hpp"
#include "ldpg/learners.hpp"
#include "ldpg/matrices.hpp"

namespace {

using namespace ldpg;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

constexpr double kAuditSlack = 1e-9;

struct Flags {
  std::string config;
  std::optional<std::string> class_spec;
  std::optional<std::string> task;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> epsilon;
  std::optional<double> theta;
  std::optional<Index> n;
  std::optional<Index> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> randomizer;
  std::optional<std::string> out;
  std::optional<double> noise;
  std::optional<std::string> target;
  std::optional<std::string> n_values;
  std::optional<std::string> epsilon_values;
  std::optional<std::string> alpha_values;
  bool timings = false;
  std::string matrix = "W";
  std::string witness;
};

template <typename T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      if constexpr (std::is_integral_v<T>) {
        out.push_back(static_cast<T>(std::stoll(item)));
      } else {
        out.push_back(static_cast<T>(std::stod(item)));
      }
    } catch (const std::exception&) {
      throw InvalidArgument("bad list entry '" + item + "'");
    }
  }
  return out;
}

// File values first, then flags.
ExperimentConfig effective_config(const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) apply_config(read_config_file(f.config), c);
  if (f.class_spec) c.class_spec = *f.class_spec;
  if (f.task) c.task = parse_task(*f.task);
  if (f.alpha) c.task_config.alpha = *f.alpha;
  if (f.beta) c.task_config.beta = *f.beta;
  if (f.epsilon) c.task_config.epsilon = *f.epsilon;
  if (f.theta) c.task_config.theta = *f.theta;
  if (f.n) c.n = *f.n;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.randomizer) c.task_config.randomizer = parse_randomizer_kind(*f.randomizer);
  if (f.out) c.out = *f.out;
  if (f.noise) c.noise = *f.noise;
  if (f.target) c.target = *f.target;
  if (f.n_values) c.n_values = split_list<Index>(*f.n_values);
  if (f.epsilon_values) c.epsilon_values = split_list<double>(*f.epsilon_values);
  if (f.alpha_values) c.alpha_values = split_list<double>(*f.alpha_values);
  if (f.timings) c.timings = true;
  return c;
}

// Writes the artifact to --out, or to stdout when no path is given.
void emit(const ExperimentConfig& c, Json artifact, const std::string& summary) {
  artifact["config"] = json_of(c);
  if (c.out.empty()) {
    std::cout << artifact.dump(2) << "\n";
    return;
  }
  write_json_file(c.out, artifact);
  std::cout << summary << "\nwrote " << c.out << "\n";
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

int cmd_gamma2(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const double alpha = c.task_config.alpha;
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be nonnegative");
  const ConceptClass cls = load_class(c.class_spec);
  IndexedMatrix m;
  if (f.matrix == "W") {
    m = build_concept_matrix(cls);
  } else if (f.matrix == "D") {
    m = build_difference_matrix(cls);
  } else if (f.matrix == "L") {
    m = build_loss_query_matrix(cls);
  } else {
    throw InvalidArgument("--matrix must be W, D or L");
  }
  const Gamma2Result r = gamma2_approx(m, alpha, c.task_config.sdp);
  Json j = json_of(r);
  j["matrix"] = f.matrix;
  emit(c, std::move(j),
       "gamma2(" + f.matrix + ", " + fmt(alpha) + ") = " + fmt(r.value) + " (certified gap " +
           fmt(r.certificate.gap) + ")");
  return kExitOk;
}

int cmd_eta(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const ConceptClass cls = load_class(c.class_spec);
  const EtaSolution e = eta(cls, c.task_config.alpha, c.task_config.sdp);
  emit(c, json_of(e),
       "eta(" + fmt(c.task_config.alpha) + ") = " + fmt(e.value) + " (certified gap " +
           fmt(e.certificate.gap) + ")");
  return kExitOk;
}

DualWitness compute_witness(const ExperimentConfig& c, const ConceptClass& cls) {
  if (c.task == Task::agnostic) {
    return agnostic_dual_witness(build_difference_matrix(cls), c.task_config.alpha,
                                 c.task_config.sdp);
  }
  return eta_dual_witness(cls, c.task_config.alpha, c.task_config.sdp);
}

int cmd_witness(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const ConceptClass cls = load_class(c.class_spec);
  const DualWitness w = compute_witness(c, cls);
  Json j = json_of(w);
  j["task"] = to_string(c.task);
  emit(c, std::move(j),
       to_string(c.task) + " witness objective " + fmt(w.objective) + ", gamma2* " +
           fmt(w.gamma2_star));
  return kExitOk;
}

int cmd_hardfamily(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const ConceptClass cls = load_class(c.class_spec);
  const double alpha = c.task_config.alpha;
  const DualWitness w = f.witness.empty() ? compute_witness(c, cls)
                                          : witness_from_json(read_json_file(f.witness));
  Json j;
  j["task"] = to_string(c.task);
  j["witness"] = json_of(w);
  bool passed = true;
  if (c.task == Task::agnostic) {
    const AgnosticHardFamily family = build_agnostic_family(cls, w);
    const RefinedAgnosticFamily refined = refine_agnostic_family(family, alpha, c.task_config.sdp);
    const ReweightResult rw =
        reweight_pi_hat(refined.U_tilde, difference_rows(refined.family), c.task_config.sdp);
    j["family"] = json_of(family);
    j["refined"] = json_of(refined);
    j["reweight"] = json_of(rw);
    passed = family.report.all_passed() && refined.report.all_passed();
  } else {
    const RealizableHardFamily family = build_realizable_family(cls, w, alpha);
    const RefinedRealizableFamily refined = refine_realizable_family(family, c.task_config.sdp);
    const MixedFamily mixed = mix_sigma(refined.family, refined.level);
    const ReweightResult rw =
        reweight_pi_hat(refined.U_tilde, difference_rows(refined.family), c.task_config.sdp);
    j["family"] = json_of(family);
    j["refined"] = json_of(refined);
    j["mixed"] = json_of(mixed);
    j["reweight"] = json_of(rw);
    passed = family.report.all_passed() && refined.report.all_passed() &&
             mixed.report.all_passed();
  }
  emit(c, std::move(j),
       to_string(c.task) + " hard family: verification " + (passed ? "passed" : "FAILED"));
  return passed ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const Flags& f) {
  ExperimentConfig c = effective_config(f);
  c.n_values.clear();
  c.epsilon_values.clear();
  c.alpha_values.clear();
  const SweepResult r = run_sweep(c);
  Json trials = Json::array();
  for (const auto& row : r.rows) {
    trials.push_back({{"trial", row.trial},
                      {"outcome", row.outcome},
                      {"achieved_loss", std::isnan(row.achieved_loss) ? Json(nullptr)
                                                                      : Json(row.achieved_loss)}});
  }
  const SummaryRow& s = r.summaries.front();
  Json j = {{"n", s.n}, {"success_rate", s.success_rate}, {"rmse", s.rmse}, {"trials", trials}};
  emit(c, std::move(j),
       to_string(c.task) + " learning, n = " + std::to_string(s.n) + ": success rate " +
           fmt(s.success_rate));
  return kExitOk;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int cmd_sweep(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const auto start = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  const SweepResult r = run_sweep(c);
  const std::string csv = sweep_csv(r, c.timings);
  if (c.out.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  write_text_file(c.out, csv);
  Json runtimes = Json::array();
  for (const auto& row : r.rows) runtimes.push_back(row.runtime_ms);
  write_json_file(c.out + ".meta.json",
                  {{"config", json_of(c)},
                   {"started", started},
                   {"wall_ms", std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - start)
                                   .count()},
                   {"runtime_ms", runtimes}});
  std::cout << "sweep: " << r.summaries.size() << " points x " << c.trials
            << " trials, slope " << fmt(r.slope) << "\nwrote " << c.out << "\n";
  return kExitOk;
}

int cmd_refute(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const RefuteResult r = run_refute(c);
  Json j = {{"answer", r.answer}, {"n", r.n}, {"target", r.target}, {"min_estimate", r.min_estimate}};
  emit(c, std::move(j), to_string(c.task) + " refutation, n = " + std::to_string(r.n) + ": " +
                            (r.answer > 0 ? "+1" : "-1"));
  return r.answer > 0 ? kExitOk : kExitCheckFailed;
}

int cmd_audit(const Flags& f) {
  const ExperimentConfig c = effective_config(f);
  const ConceptClass cls = load_class(c.class_spec);
  const AgnosticLearner learner(cls, c.task_config);
  const PrivacyParams params(c.task_config.epsilon);
  const PrivacyAudit a = audit_privacy(learner.randomizer(), params);
  const bool passed = a.max_log_ratio <= params.epsilon() + kAuditSlack;
  Json j = json_of(a);
  j["epsilon"] = params.epsilon();
  j["passed"] = passed;
  j["d"] = learner.randomizer().d();
  emit(c, std::move(j),
       to_string(c.task_config.randomizer) + " max log-ratio " + fmt(a.max_log_ratio) +
           " against epsilon " + fmt(params.epsilon()));
  return passed ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "TOML or JSON config file; flags take precedence");
  cmd->add_option("--class", f.class_spec, "zoo spec such as thresholds(8), or a class JSON file");
  cmd->add_option("--task", f.task, "agnostic or realizable");
  cmd->add_option("--alpha", f.alpha, "accuracy");
  cmd->add_option("--beta", f.beta, "failure probability");
  cmd->add_option("--epsilon", f.epsilon, "privacy parameter");
  cmd->add_option("--theta", f.theta, "refutation threshold");
  cmd->add_option("--n", f.n, "sample size; 0 uses the sample-size formula");
  cmd->add_option("--trials", f.trials, "trials per point");
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--randomizer", f.randomizer, "coord-rr or laplace-l1");
  cmd->add_option("--out", f.out, "output file; stdout when omitted");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization norms and local differential privacy for learning"};
  app.require_subcommand(1);
  Flags f;
  auto* gamma2_cmd = app.add_subcommand("gamma2", "approximate gamma_2 norm of W, D or L");
  auto* eta_cmd = app.add_subcommand("eta", "eta(C, alpha) with its factorization");
  auto* witness_cmd = app.add_subcommand("witness", "dual witness for the task");
  auto* family_cmd = app.add_subcommand("hardfamily", "hard distribution families from a witness");
  auto* simulate_cmd = app.add_subcommand("simulate", "repeated learning trials at one point");
  auto* refute_cmd = app.add_subcommand("refute", "one refutation; exit 0 for +1, 1 for -1");
  auto* sweep_cmd = app.add_subcommand("sweep", "learning trials over a parameter grid (CSV)");
  auto* audit_cmd = app.add_subcommand("audit", "exact privacy audit of the learner's randomizer");
  for (auto* cmd : {gamma2_cmd, eta_cmd, witness_cmd, family_cmd, simulate_cmd, refute_cmd, sweep_cmd, audit_cmd}) {
    add_common(cmd, f);
  }
  gamma2_cmd->add_option("--matrix", f.matrix, "W, D or L")->check(CLI::IsMember({"W", "D", "L"}));
  family_cmd->add_option("--witness", f.witness, "witness JSON from the witness command");
  for (auto* cmd : {simulate_cmd, refute_cmd, sweep_cmd}) {
    cmd->add_option("--noise", f.noise, "label flip rate of the data distribution");
    cmd->add_option("--target", f.target, "concept labeling the data");
  }
  sweep_cmd->add_option("--n-values", f.n_values, "comma-separated sample sizes");
  sweep_cmd->add_option("--epsilon-values", f.epsilon_values, "comma-separated epsilons");
  sweep_cmd->add_option("--alpha-values", f.alpha_values, "comma-separated alphas");
  sweep_cmd->add_flag("--timings", f.timings, "write runtimes into the CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gamma2_cmd) return cmd_gamma2(f);
    if (*eta_cmd) return cmd_eta(f);
    if (*witness_cmd) return cmd_witness(f);
    if (*family_cmd) return cmd_hardfamily(f);
    if (*simulate_cmd) return cmd_simulate(f);
    if (*refute_cmd) return cmd_refute(f);
    if (*sweep_cmd) return cmd_sweep(f);
    if (*audit_cmd) return cmd_audit(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
