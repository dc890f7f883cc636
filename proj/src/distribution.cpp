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

#include "ldpg/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "ldpg/error.hpp"
#include "ldpg/random.hpp"

namespace ldpg {

namespace {

// Validates nonnegativity and the unit sum, then renormalizes in place.
template <typename Derived>
void normalize_probabilities(Eigen::MatrixBase<Derived>& p, const char* what) {
  if (!p.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite probability");
  if ((p.array() < 0.0).any()) throw InvalidArgument(std::string(what) + ": negative probability");
  const double total = p.sum();
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw InvalidArgument(std::string(what) + ": probabilities sum to " + std::to_string(total));
  }
  p /= total;
}

void check_same_domain(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a != b) throw DomainMismatch("distributions are over different domains");
}

}  // namespace

WeightedIndex::WeightedIndex(std::vector<std::string> support, Eigen::VectorXd weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (static_cast<Index>(support_.size()) != weights_.size()) {
    throw InvalidArgument("weighted index: label count differs from weight count");
  }
  if (support_.empty()) throw InvalidArgument("weighted index: empty support");
  if (std::set<std::string>(support_.begin(), support_.end()).size() != support_.size()) {
    throw InvalidArgument("weighted index: duplicate label");
  }
  normalize_probabilities(weights_, "weighted index");
}

WeightedIndex WeightedIndex::uniform(std::vector<std::string> support) {
  const auto k = static_cast<Index>(support.size());
  if (k == 0) throw InvalidArgument("weighted index: empty support");
  return WeightedIndex(std::move(support), Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k)));
}

double WeightedIndex::weight_of(const std::string& label) const {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] == label) return weights_(static_cast<Index>(i));
  }
  return 0.0;
}

LabeledDistribution::LabeledDistribution(std::vector<std::string> domain, Eigen::MatrixX2d probs)
    : domain_(std::move(domain)), probs_(std::move(probs)) {
  if (domain_.empty()) throw InvalidArgument("labeled distribution: empty domain");
  if (probs_.rows() != static_cast<Index>(domain_.size())) {
    throw InvalidArgument("labeled distribution: table has " + std::to_string(probs_.rows()) +
                          " rows for " + std::to_string(domain_.size()) + " points");
  }
  normalize_probabilities(probs_, "labeled distribution");
}

LabeledDistribution LabeledDistribution::labeled_by(std::vector<std::string> domain,
                                                    const Eigen::VectorXd& marginal,
                                                    const SignVector& labels) {
  if (marginal.size() != labels.size()) throw DomainMismatch("marginal and labels differ in size");
  Eigen::MatrixX2d p = Eigen::MatrixX2d::Zero(marginal.size(), 2);
  for (Index x = 0; x < marginal.size(); ++x) p(x, labels(x) > 0 ? 0 : 1) = marginal(x);
  return LabeledDistribution(std::move(domain), std::move(p));
}

LabeledDistribution LabeledDistribution::point_mass(std::vector<std::string> domain, Index point,
                                                    int label) {
  Eigen::MatrixX2d p = Eigen::MatrixX2d::Zero(static_cast<Index>(domain.size()), 2);
  if (point < 0 || point >= p.rows()) throw DomainMismatch("point mass outside the domain");
  p(point, label > 0 ? 0 : 1) = 1.0;
  return LabeledDistribution(std::move(domain), std::move(p));
}

Eigen::VectorXd LabeledDistribution::flat() const {
  Eigen::VectorXd out(2 * domain_size());
  for (Index x = 0; x < domain_size(); ++x) {
    out(labeled_column(x, +1)) = probs_(x, 0);
    out(labeled_column(x, -1)) = probs_(x, 1);
  }
  return out;
}

Dataset::Dataset(std::vector<std::string> domain, std::vector<LabeledPoint> records)
    : domain_(std::move(domain)), records_(std::move(records)) {
  if (records_.empty()) throw InvalidArgument("dataset: no records");
  const auto n_points = static_cast<Index>(domain_.size());
  for (const auto& r : records_) {
    if (r.point < 0 || r.point >= n_points) throw DomainMismatch("dataset: point outside domain");
    if (r.label != 1 && r.label != -1) throw InvalidArgument("dataset: label must be +1 or -1");
  }
}

Eigen::MatrixX2d Dataset::histogram() const {
  Eigen::MatrixX2d h = Eigen::MatrixX2d::Zero(static_cast<Index>(domain_.size()), 2);
  for (const auto& r : records_) h(r.point, r.label > 0 ? 0 : 1) += 1.0;
  return h;
}

LabeledDistribution Dataset::empirical() const {
  return LabeledDistribution(domain_, histogram() / static_cast<double>(records_.size()));
}

double population_loss(const LabeledDistribution& dist, const SignVector& hyp) {
  if (hyp.size() != dist.domain_size()) {
    throw DomainMismatch("hypothesis has " + std::to_string(hyp.size()) + " entries, domain has " +
                         std::to_string(dist.domain_size()));
  }
  double loss = 0.0;
  for (Index x = 0; x < hyp.size(); ++x) loss += dist.prob(x, -hyp(x));
  return loss;
}

double empirical_loss(const Dataset& data, const SignVector& hyp) {
  if (hyp.size() != static_cast<Index>(data.domain().size())) {
    throw DomainMismatch("hypothesis does not match the dataset domain");
  }
  Index wrong = 0;
  for (const auto& r : data.records()) wrong += hyp(r.point) != r.label ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

double bayes_error(const LabeledDistribution& dist) {
  return dist.probs().rowwise().minCoeff().sum();
}

SignVector majority_hypothesis(const LabeledDistribution& dist) {
  SignVector h(dist.domain_size());
  for (Index x = 0; x < h.size(); ++x) h(x) = dist.prob(x, +1) >= dist.prob(x, -1) ? 1 : -1;
  return h;
}

LabeledDistribution flip_labels(const LabeledDistribution& dist) {
  Eigen::MatrixX2d p(dist.domain_size(), 2);
  p.col(0) = dist.probs().col(1);
  p.col(1) = dist.probs().col(0);
  return LabeledDistribution(dist.domain(), std::move(p));
}

LabeledDistribution mix(const LabeledDistribution& a, const LabeledDistribution& b, double t) {
  check_same_domain(a.domain(), b.domain());
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("mix: weight outside [0,1]");
  return LabeledDistribution(a.domain(), (1.0 - t) * a.probs() + t * b.probs());
}

Dataset sample(const LabeledDistribution& dist, Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("sample: n must be at least 1");
  const Eigen::VectorXd p = dist.flat();
  std::vector<double> cdf(static_cast<std::size_t>(p.size()));
  double acc = 0.0;
  for (Index i = 0; i < p.size(); ++i) cdf[static_cast<std::size_t>(i)] = acc += p(i);
  // Never select a trailing zero-probability cell on u close to 1.
  Index last = p.size() - 1;
  while (last > 0 && p(last) == 0.0) --last;

  std::mt19937_64 engine(seed);
  std::vector<LabeledPoint> records;
  records.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double u = uniform01(engine) * acc;
    auto cell = static_cast<Index>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    cell = std::min(cell, last);
    records.push_back({cell / 2, cell % 2 == 0 ? +1 : -1});
  }
  return Dataset(dist.domain(), std::move(records));
}

}  // namespace ldpg
