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

#include "ldpg/error.hpp"
#include "ldpg/factor_norms.hpp"
#include "ldpg/learners.hpp"
#include "ldpg/testing/hooks.hpp"
#include "ldpg/zoo.hpp"

namespace ldpg {
namespace {

using Eigen::VectorXd;

TaskConfig config_with(double alpha, double theta = 0.0) {
  TaskConfig c;
  c.alpha = alpha;
  c.theta = theta;
  return c;
}

LabeledDistribution uniform_labeled_by(const ConceptClass& cls, Index c) {
  const Index n = cls.domain_size();
  return LabeledDistribution::labeled_by(cls.domain(), VectorXd::Constant(n, 1.0 / n), cls.concept_vector(c));
}

LabeledDistribution uniform_noise(const ConceptClass& cls) {
  const Index n = cls.domain_size();
  return LabeledDistribution(cls.domain(), Eigen::MatrixX2d::Constant(n, 2, 0.5 / n));
}

// Data set whose empirical distribution is exactly `counts` per (x, y).
Dataset exact_dataset(const std::vector<std::string>& domain, const Eigen::MatrixX2i& counts) {
  std::vector<LabeledPoint> records;
  for (Index x = 0; x < counts.rows(); ++x) {
    for (int k = 0; k < counts(x, 0); ++k) records.push_back({x, +1});
    for (int k = 0; k < counts(x, 1); ++k) records.push_back({x, -1});
  }
  return Dataset(domain, records);
}

TEST(TaskConfig, Validation) {
  EXPECT_NO_THROW(config_with(0.5).validate(Task::agnostic));
  EXPECT_THROW(config_with(0.0).validate(Task::agnostic), InvalidArgument);
  EXPECT_THROW(config_with(0.6).validate(Task::agnostic), InvalidArgument);
  EXPECT_THROW(config_with(0.1, 1.5).validate(Task::agnostic), InvalidArgument);
  EXPECT_THROW(config_with(0.34).validate(Task::realizable), InvalidArgument);
  EXPECT_NO_THROW(config_with(1.0 / 3.0).validate(Task::realizable));
  TaskConfig c;
  c.beta = 0.5;
  EXPECT_THROW(c.validate(Task::agnostic), InvalidArgument);
  c = TaskConfig{};
  c.epsilon = 0.0;
  EXPECT_THROW(c.validate(Task::agnostic), InvalidArgument);
}

TEST(SampleSize, FormulaEvaluation) {
  const TaskConfig c = config_with(0.1);
  const double raw = 32.0 * std::log(40.0) / 0.01;
  EXPECT_EQ(required_sample_size(1.0, 2, c), static_cast<Index>(std::ceil(raw)));
  EXPECT_EQ(required_sample_size(1.0, 2, c), 11805);

  TaskConfig doubled = c;
  doubled.epsilon = 2.0;
  EXPECT_EQ(required_sample_size(1.0, 2, doubled), static_cast<Index>(std::ceil(raw / 4.0)));
}

TEST(SampleSize, SingletonRealizableUsesEta) {
  const ConceptClass one = zoo("singleton(3)");
  const TaskConfig c = config_with(0.1);
  const Index n = required_sample_size(Task::realizable, one, c);
  const double raw = 32.0 * 0.45 * 0.45 * std::log(20.0) / 0.01;
  EXPECT_NEAR(static_cast<double>(n), std::ceil(raw), 1.0);
}

TEST(Argmin, TieBreakAndScaling) {
  const std::vector<std::string> names{"b", "a", "c"};
  const std::vector<bool> all(3, true);
  EXPECT_EQ(argmin_by_name(VectorXd{{0.2, 0.2, 0.3}}, names, all), 1);
  EXPECT_EQ(argmin_by_name(VectorXd{{0.1, 0.2, 0.3}}, names, all), 0);
  EXPECT_EQ(argmin_by_name(VectorXd{{0.1, 0.2, 0.3}} * 7.0, names, all), 0);
  EXPECT_EQ(argmin_by_name(VectorXd{{0.1, 0.2, 0.3}}, names, {false, false, true}), 2);
  EXPECT_EQ(argmin_by_name(VectorXd{{0.1, 0.2, 0.3}}, names, {false, false, false}), -1);
}

TEST(Agnostic, SingleConceptIsAlwaysReturned) {
  const ConceptClass one = zoo("singleton(4)");
  const Dataset data = sample(uniform_noise(one), 50, 3);
  for (std::uint64_t s = 0; s < 5; ++s) {
    EXPECT_EQ(agnostic_learn(one, data, config_with(0.1), s).chosen, "one");
  }
}

TEST(Agnostic, NoiseFreeEstimatesTrackEmpiricalLosses) {
  const ConceptClass cls = zoo("thresholds(4)");
  const TaskConfig c = config_with(0.1);
  AgnosticLearner learner(cls, c);
  testing::make_noise_free(learner);
  Eigen::MatrixX2i counts(4, 2);
  counts << 3, 1, 0, 2, 5, 0, 1, 4;
  const Dataset data = exact_dataset(cls.domain(), counts);
  const VectorXd est = learner.estimate_losses(data, 0);
  for (Index k = 0; k < cls.size(); ++k) {
    EXPECT_NEAR(est(k), empirical_loss(data, cls.concept_vector(k)), c.alpha / 4.0 + 1e-6);
  }
  const LearnOutcome out = learner.learn(data, 0);
  EXPECT_EQ(out.n, data.size());
  EXPECT_EQ(out.names, cls.names());
  EXPECT_EQ(out.transcript.messages, data.size());
  double best = 1.0;
  for (Index k = 0; k < cls.size(); ++k) best = std::min(best, empirical_loss(data, cls.concept_vector(k)));
  EXPECT_LE(empirical_loss(data, cls.concept_vector(out.chosen_index)), best + c.alpha / 2.0 + 1e-6);
}

TEST(Agnostic, PermutingConceptsKeepsTheChoice) {
  const ConceptClass cls = zoo("thresholds(4)");
  Eigen::MatrixXi rev = cls.signs().colwise().reverse();
  std::vector<std::string> names(cls.names().rbegin(), cls.names().rend());
  const ConceptClass reversed(cls.domain(), names, rev);
  const Dataset data = sample(uniform_labeled_by(cls, 2), 400, 9);
  AgnosticLearner a(cls, config_with(0.1));
  AgnosticLearner b(reversed, config_with(0.1));
  testing::make_noise_free(a);
  testing::make_noise_free(b);
  EXPECT_EQ(a.learn(data, 0).chosen, "t2");
  EXPECT_EQ(b.learn(data, 0).chosen, "t2");
}

TEST(Agnostic, RefuteWithThetaOneAlwaysAccepts) {
  const ConceptClass cls = zoo("thresholds(3)");
  const Dataset data = sample(uniform_noise(cls), 20, 1);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_EQ(agnostic_refute(cls, data, config_with(0.1, 1.0), s), 1);
}

TEST(Agnostic, RejectsForeignDomain) {
  const ConceptClass cls = zoo("thresholds(3)");
  const Dataset data({"a", "b", "c"}, {{0, 1}});
  EXPECT_THROW(agnostic_learn(cls, data, config_with(0.1), 0), DomainMismatch);
}

TEST(Agnostic, ThresholdsMonteCarlo) {
  const ConceptClass cls = zoo("thresholds(4)");
  const TaskConfig c = config_with(0.1);
  const AgnosticLearner learner(cls, c);
  const Index n = required_sample_size(Task::agnostic, cls, c);
  const LabeledDistribution target = uniform_labeled_by(cls, cls.concept_index("t2"));
  int good = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const LearnOutcome out = learner.learn(sample(target, n, 2 * t), 2 * t + 1);
    good += population_loss(target, cls.concept_vector(out.chosen_index)) <= c.alpha;
  }
  EXPECT_GE(good, 90);
}

TEST(Agnostic, RefuterSeparatesRealizableFromNoise) {
  const ConceptClass cls = zoo("thresholds(4)");
  const TaskConfig accept = config_with(0.1, 0.25);
  const TaskConfig reject = config_with(0.1, 0.5 - 0.1);
  const AgnosticLearner a(cls, accept);
  const AgnosticLearner r(cls, reject);
  const Index n = required_sample_size(Task::agnostic, cls, accept);
  const auto labeled = uniform_labeled_by(cls, 1);
  const auto noise = uniform_noise(cls);
  int plus = 0;
  int minus = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    plus += a.refute(sample(labeled, n, 4 * t), 4 * t + 1) == 1;
    minus += r.refute(sample(noise, n, 4 * t + 2), 4 * t + 3) == -1;
  }
  EXPECT_GE(plus, 90);
  EXPECT_GE(minus, 90);
}

TEST(Realizable, SingletonNoiseFreeAccepts) {
  const ConceptClass one = zoo("singleton(3)");
  const TaskConfig c = config_with(0.1);
  RealizableLearner learner(one, c);
  testing::make_noise_free(learner);
  const Dataset data = sample(uniform_labeled_by(one, 0), 30, 5);
  const LearnOutcome out = learner.learn(data, 0);
  EXPECT_EQ(out.chosen, "one");
  EXPECT_LE(out.estimates(0), c.alpha + 1e-6);
  EXPECT_EQ(learner.refute(data, 0), 1);
}

TEST(Realizable, SurrogateBoundsWithoutNoise) {
  const ConceptClass cls = zoo("thresholds(4)");
  const TaskConfig c = config_with(0.1);
  RealizableLearner learner(cls, c);
  testing::make_noise_free(learner);
  const Dataset data = sample(uniform_labeled_by(cls, 3), 200, 6);
  const VectorXd est = learner.shifted_estimates(data, 0);
  EXPECT_LE(est(3), c.alpha + 1e-6);
  for (Index k = 0; k < cls.size(); ++k) {
    EXPECT_GE(est(k), empirical_loss(data, cls.concept_vector(k)) - c.alpha - 1e-6);
  }
}

TEST(Realizable, NoisyDataIsNotAccepted) {
  const ConceptClass cls = zoo("thresholds(4)");
  const TaskConfig c = config_with(0.1);
  RealizableLearner learner(cls, c);
  testing::make_noise_free(learner);
  Eigen::MatrixX2i counts = Eigen::MatrixX2i::Constant(4, 2, 5);
  const Dataset data = exact_dataset(cls.domain(), counts);
  EXPECT_THROW(learner.learn(data, 0), LearningFailure);
  EXPECT_EQ(learner.refute(data, 0), -1);
}

TEST(Realizable, RefuterMonteCarlo) {
  const ConceptClass cls = zoo("thresholds(4)");
  const TaskConfig c = config_with(0.1);
  const RealizableLearner learner(cls, c);
  const Index n = required_sample_size(Task::realizable, cls, c);
  const auto labeled = uniform_labeled_by(cls, 2);
  const auto noise = uniform_noise(cls);
  int plus = 0;
  int minus = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    plus += learner.refute(sample(labeled, n, 4 * t), 4 * t + 1) == 1;
    minus += learner.refute(sample(noise, n, 4 * t + 2), 4 * t + 3) == -1;
  }
  EXPECT_GE(plus, 90);
  EXPECT_GE(minus, 90);
}

}  // namespace
}  // namespace ldpg
