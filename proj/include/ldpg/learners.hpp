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

#ifndef LDPG_LEARNERS_HPP_
#define LDPG_LEARNERS_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "ldpg/concept_class.hpp"
#include "ldpg/distribution.hpp"
#include "ldpg/factor_norms.hpp"
#include "ldpg/ldp.hpp"

namespace ldpg {

namespace testing {
class HookAccess;
}

enum class Task { agnostic, realizable };

struct TaskConfig {
  double alpha = 0.1;
  double beta = 0.1;
  double epsilon = 1.0;
  double theta = 0.0;  // refutation threshold
  double c0 = 32.0;
  RandomizerKind randomizer = RandomizerKind::coord_rr;
  SdpSettings sdp;

  /// Throws InvalidArgument outside alpha in (0, 1/2], beta in (0, 1/2),
  /// theta in [0, 1], epsilon in (0, 8]; realizable tasks also need 3 alpha <= 1.
  void validate(Task task) const;
};

struct TranscriptStats {
  Index messages = 0;
  Index dimension = 0;  // d, coordinates per message
  double m = 0;         // ||A||_{1->inf}
  double l1_sensitivity = 0;
};

struct LearnOutcome {
  std::string chosen;
  Index chosen_index = -1;
  std::vector<std::string> names;
  /// Agnostic: estimated losses. Realizable: shifted surrogate estimates.
  Eigen::VectorXd estimates;
  Index n = 0;
  TranscriptStats transcript;
};

/// ceil(c0 norm^2 ln(2 |C| / beta) / (epsilon^2 alpha^2)).
Index required_sample_size(double norm, Index class_size, const TaskConfig& config);

/// The formula above with norm gamma_2(W, alpha) (agnostic) or eta(C, alpha)
/// (realizable).
Index required_sample_size(Task task, const ConceptClass& cls, const TaskConfig& config);

/// Index of the smallest estimate among `allowed`, ties broken by the
/// lexicographically smallest name; -1 when nothing is allowed.
Index argmin_by_name(const Eigen::VectorXd& estimates, const std::vector<std::string>& names,
                     const std::vector<bool>& allowed);

/// Agnostic learner and refuter. Holds the factorization of W at alpha / 2
/// so repeated trials reuse one SDP solve.
class AgnosticLearner {
 public:
  AgnosticLearner(ConceptClass cls, TaskConfig config);

  /// Proper learner: the concept with the smallest estimated loss.
  LearnOutcome learn(const Dataset& data, std::uint64_t seed) const;
  /// +1 iff the smallest estimated loss is <= theta + alpha / 2.
  int refute(const Dataset& data, std::uint64_t seed) const;

  /// Estimated population loss of every concept.
  Eigen::VectorXd estimate_losses(const Dataset& data, std::uint64_t seed) const;

  const ConceptClass& concept_class() const { return cls_; }
  const TaskConfig& config() const { return config_; }
  const Factorization& factorization() const { return factorization_; }
  const RandomizerSpec& randomizer() const { return spec_; }

 private:
  friend class testing::HookAccess;

  ConceptClass cls_;
  TaskConfig config_;
  Factorization factorization_;
  RandomizerSpec spec_;
};

/// Realizable learner and refuter built on the eta surrogate queries.
class RealizableLearner {
 public:
  RealizableLearner(ConceptClass cls, TaskConfig config);

  /// The accepted concept (shifted estimate < 2 alpha) with the smallest
  /// estimate; throws LearningFailure when no concept is accepted.
  LearnOutcome learn(const Dataset& data, std::uint64_t seed) const;
  /// +1 iff some concept is accepted.
  int refute(const Dataset& data, std::uint64_t seed) const;

  /// Surrogate query answers minus theta_c, per concept.
  Eigen::VectorXd shifted_estimates(const Dataset& data, std::uint64_t seed) const;

  const ConceptClass& concept_class() const { return cls_; }
  const TaskConfig& config() const { return config_; }
  const EtaSolution& eta_solution() const { return eta_; }
  const Factorization& factorization() const { return factorization_; }
  const RandomizerSpec& randomizer() const { return spec_; }

 private:
  friend class testing::HookAccess;

  ConceptClass cls_;
  TaskConfig config_;
  EtaSolution eta_;
  Factorization factorization_;
  RandomizerSpec spec_;
};

LearnOutcome agnostic_learn(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                            std::uint64_t seed);
int agnostic_refute(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                    std::uint64_t seed);
LearnOutcome realizable_learn(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                              std::uint64_t seed);
int realizable_refute(const ConceptClass& cls, const Dataset& data, const TaskConfig& config,
                      std::uint64_t seed);

}  // namespace ldpg

#endif  // LDPG_LEARNERS_HPP_
