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

#ifndef LDPG_DISTRIBUTION_HPP_
#define LDPG_DISTRIBUTION_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "ldpg/concept_class.hpp"

namespace ldpg {

/// Probabilities may deviate from a unit sum by at most this much; they are
/// renormalized, larger deviations are rejected.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Probability vector over a labeled index set (pi over concepts, concept
/// pairs, ...). Labels are unique, weights nonnegative and sum to one.
class WeightedIndex {
 public:
  WeightedIndex(std::vector<std::string> support, Eigen::VectorXd weights);

  static WeightedIndex uniform(std::vector<std::string> support);

  Index size() const { return weights_.size(); }
  const std::vector<std::string>& support() const { return support_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double weight(Index i) const { return weights_(i); }
  /// 0 for labels outside the support.
  double weight_of(const std::string& label) const;

 private:
  std::vector<std::string> support_;
  Eigen::VectorXd weights_;
};

/// Probability table over X x {-1,+1}. Column 0 holds label +1, column 1
/// label -1.
class LabeledDistribution {
 public:
  LabeledDistribution(std::vector<std::string> domain, Eigen::MatrixX2d probs);

  /// Marginal `marginal` on X with every point labeled by `labels`.
  static LabeledDistribution labeled_by(std::vector<std::string> domain,
                                        const Eigen::VectorXd& marginal,
                                        const SignVector& labels);

  /// Point mass on (domain[point], label).
  static LabeledDistribution point_mass(std::vector<std::string> domain, Index point, int label);

  Index domain_size() const { return probs_.rows(); }
  const std::vector<std::string>& domain() const { return domain_; }
  const Eigen::MatrixX2d& probs() const { return probs_; }
  double prob(Index point, int label) const { return probs_(point, label > 0 ? 0 : 1); }

  Eigen::VectorXd marginal() const { return probs_.rowwise().sum(); }

  /// Entries flattened in the interleaved X x {+-1} column order.
  Eigen::VectorXd flat() const;

 private:
  std::vector<std::string> domain_;
  Eigen::MatrixX2d probs_;
};

struct LabeledPoint {
  Index point = 0;
  int label = 1;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// Multiset of labeled points over a declared domain.
class Dataset {
 public:
  Dataset(std::vector<std::string> domain, std::vector<LabeledPoint> records);

  Index size() const { return static_cast<Index>(records_.size()); }
  const std::vector<std::string>& domain() const { return domain_; }
  const std::vector<LabeledPoint>& records() const { return records_; }

  /// Counts per (x, y), same layout as LabeledDistribution::probs().
  Eigen::MatrixX2d histogram() const;
  LabeledDistribution empirical() const;

 private:
  std::vector<std::string> domain_;
  std::vector<LabeledPoint> records_;
};

/// Pr_{(x,y)~dist}[hyp(x) != y].
double population_loss(const LabeledDistribution& dist, const SignVector& hyp);

/// Fraction of records with hyp(x) != y.
double empirical_loss(const Dataset& data, const SignVector& hyp);

/// min over all hypotheses of population_loss: sum_x min(p(x,+1), p(x,-1)).
double bayes_error(const LabeledDistribution& dist);

/// Pointwise-majority hypothesis (ties labeled +1); attains bayes_error.
SignVector majority_hypothesis(const LabeledDistribution& dist);

/// Swaps the two labels at every point.
LabeledDistribution flip_labels(const LabeledDistribution& dist);

/// Convex combination (1 - t) a + t b over a shared domain.
LabeledDistribution mix(const LabeledDistribution& a, const LabeledDistribution& b, double t);

/// n i.i.d. draws; deterministic given the seed.
Dataset sample(const LabeledDistribution& dist, Index n, std::uint64_t seed);

}  // namespace ldpg

#endif  // LDPG_DISTRIBUTION_HPP_
