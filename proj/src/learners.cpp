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

#include "ldpg/learners.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ldpg/error.hpp"
#include "ldpg/matrices.hpp"

namespace ldpg {

namespace {

constexpr double kResidualSlack = 1e-6;

void check_domain(const ConceptClass& cls, const Dataset& data) {
  if (data.domain() != cls.domain()) throw DomainMismatch("dataset domain differs from the class domain");
}

// W~ = R A approximates W at alpha / 2. The query for concept c on (x, y) is
// y W~(c, x), so the per-record vector is y A(:, x).
Factorization agnostic_factorization(const ConceptClass& cls, const TaskConfig& config) {
  config.validate(Task::agnostic);
  const IndexedMatrix w = build_concept_matrix(cls);
  const Gamma2Result g = gamma2_approx(w, config.alpha / 2.0, config.sdp);
  Factorization f = truncate_factorization(g.factorization, w);
  if (f.residual_inf > config.alpha / 2.0 + kResidualSlack) {
    throw SolverError("factorization residual exceeds alpha / 2", f.residual_inf - config.alpha / 2.0);
  }
  const Eigen::MatrixXd& a = f.A.values();
  Eigen::MatrixXd sym(a.rows(), 2 * a.cols());
  for (Index x = 0; x < a.cols(); ++x) {
    sym.col(labeled_column(x, +1)) = a.col(x);
    sym.col(labeled_column(x, -1)) = -a.col(x);
  }
  f.A = IndexedMatrix(f.A.row_labels(), labeled_column_labels(cls.domain()), std::move(sym));
  return f;
}

TranscriptStats stats_of(const RandomizerSpec& spec, Index n) {
  return {n, spec.d(), spec.m(), spec.l1_sensitivity()};
}

LearnOutcome make_outcome(const ConceptClass& cls, Eigen::VectorXd estimates, Index chosen,
                          const RandomizerSpec& spec, Index n) {
  LearnOutcome out;
  out.names = cls.names();
  out.estimates = std::move(estimates);
  out.chosen_index = chosen;
  out.chosen = cls.name(chosen);
  out.n = n;
  out.transcript = stats_of(spec, n);
  return out;
}

}  // namespace

void TaskConfig::validate(Task task) const {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw InvalidArgument("alpha must lie in (0, 1/2]");
  if (!(beta > 0.0 && beta < 0.5)) throw InvalidArgument("beta must lie in (0, 1/2)");
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in [0, 1]");
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw InvalidArgument("c0 must be positive");
  PrivacyParams{epsilon};
  if (task == Task::realizable && 3.0 * alpha > 1.0) {
    throw InvalidArgument("realizable tasks need 3 alpha <= 1");
  }
}

Index required_sample_size(double norm, Index class_size, const TaskConfig& config) {
  if (!(norm >= 0.0) || class_size < 1) throw InvalidArgument("invalid norm or class size");
  const double n = config.c0 * norm * norm * std::log(2.0 * static_cast<double>(class_size) / config.beta) /
                   (config.epsilon * config.epsilon * config.alpha * config.alpha);
  return std::max<Index>(1, static_cast<Index>(std::ceil(n)));
}

Index required_sample_size(Task task, const ConceptClass& cls, const TaskConfig& config) {
  config.validate(task);
  const double norm = task == Task::agnostic
                          ? gamma2_approx(build_concept_matrix(cls), config.alpha, config.sdp).value
                          : eta(cls, config.alpha, config.sdp).value;
  return required_sample_size(norm, cls.size(), config);
}

Index argmin_by_name(const Eigen::VectorXd& estimates, const std::vector<std::string>& names,
                     const std::vector<bool>& allowed) {
  Index best = -1;
  for (Index c = 0; c < estimates.size(); ++c) {
    if (!allowed[static_cast<std::size_t>(c)]) continue;
    if (best < 0 || estimates(c) < estimates(best) ||
        (estimates(c) == estimates(best) &&
         names[static_cast<std::size_t>(c)] < names[static_cast<std::size_t>(best)])) {
      best = c;
    }
  }
  return best;
}

AgnosticLearner::AgnosticLearner(ConceptClass cls, TaskConfig config)
    : cls_(std::move(cls)),
      config_(config),
      factorization_(agnostic_factorization(cls_, config_)),
      spec_(config_.randomizer, factorization_.A) {}

Eigen::VectorXd AgnosticLearner::estimate_losses(const Dataset& data, std::uint64_t seed) const {
  check_domain(cls_, data);
  const Eigen::VectorXd q =
      run_protocol(data, factorization_.R, spec_, PrivacyParams(config_.epsilon), seed);
  return (1.0 - q.array()) / 2.0;
}

LearnOutcome AgnosticLearner::learn(const Dataset& data, std::uint64_t seed) const {
  Eigen::VectorXd losses = estimate_losses(data, seed);
  const std::vector<bool> all(static_cast<std::size_t>(cls_.size()), true);
  const Index chosen = argmin_by_name(losses, cls_.names(), all);
  return make_outcome(cls_, std::move(losses), chosen, spec_, data.size());
}

int AgnosticLearner::refute(const Dataset& data, std::uint64_t seed) const {
  return estimate_losses(data, seed).minCoeff() <= config_.theta + config_.alpha / 2.0 ? +1 : -1;
}

namespace {

EtaSolution realizable_eta(const ConceptClass& cls, const TaskConfig& config) {
  config.validate(Task::realizable);
  return eta(cls, config.alpha, config.sdp);
}

}  // namespace

RealizableLearner::RealizableLearner(ConceptClass cls, TaskConfig config)
    : cls_(std::move(cls)),
      config_(config),
      eta_(realizable_eta(cls_, config_)),
      factorization_(truncate_factorization(eta_.factorization, eta_.W_tilde)),
      spec_(config_.randomizer, factorization_.A) {
  if (factorization_.residual_inf > kResidualSlack) {
    throw SolverError("truncated factorization drifts from W + theta 1^T", factorization_.residual_inf);
  }
}

Eigen::VectorXd RealizableLearner::shifted_estimates(const Dataset& data, std::uint64_t seed) const {
  check_domain(cls_, data);
  const Eigen::VectorXd q =
      run_protocol(data, factorization_.R, spec_, PrivacyParams(config_.epsilon), seed);
  return q - eta_.theta;
}

LearnOutcome RealizableLearner::learn(const Dataset& data, std::uint64_t seed) const {
  Eigen::VectorXd est = shifted_estimates(data, seed);
  std::vector<bool> accepted(static_cast<std::size_t>(cls_.size()));
  for (Index c = 0; c < cls_.size(); ++c) {
    accepted[static_cast<std::size_t>(c)] = est(c) < 2.0 * config_.alpha;
  }
  const Index chosen = argmin_by_name(est, cls_.names(), accepted);
  if (chosen < 0) throw LearningFailure("not realizable at this accuracy");
  return make_outcome(cls_, std::move(est), chosen, spec_, data.size());
}

int RealizableLearner::refute(const Dataset& data, std::uint64_t seed) const {
  return shifted_estimates(data, seed).minCoeff() < 2.0 * config_.alpha ? +1 : -1;
}

LearnOutcome agnostic_learn(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                            std::uint64_t seed) {
  return AgnosticLearner(cls, config).learn(data, seed);
}

int agnostic_refute(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                    std::uint64_t seed) {
  return AgnosticLearner(cls, config).refute(data, seed);
}

LearnOutcome realizable_learn(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                              std::uint64_t seed) {
  return RealizableLearner(cls, config).learn(data, seed);
}

int realizable_refute(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                      std::uint64_t seed) {
  return RealizableLearner(cls, config).refute(data, seed);
}

}  // namespace ldpg
