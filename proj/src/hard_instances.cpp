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

#include "ldpg/hard_instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ldpg/error.hpp"
#include "ldpg/matrices.hpp"
#include "ldpg/random.hpp"
#include "ldpg/sdp.hpp"

namespace ldpg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNormalizationTolerance = 1e-9;
constexpr int kMaxCuts = 200;

void check_unit_mass(const MatrixXd& u) {
  const double l1 = entrywise_l1(u);
  if (!(l1 > 0.0)) throw InvalidArgument("all-zero witness");
  if (std::abs(l1 - 1.0) > kNormalizationTolerance) {
    throw InvalidArgument("witness is not l1-normalized");
  }
}

WeightedIndex weights_of(const std::vector<std::string>& labels, const std::vector<double>& w) {
  VectorXd v(static_cast<Index>(w.size()));
  double total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i];
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Index>(i)) = w[i] / total;
  return WeightedIndex(labels, std::move(v));
}

// (lambda - mu)(x, +1) per point.
VectorXd plus_difference(const LabeledDistribution& lambda, const LabeledDistribution& mu) {
  return lambda.probs().col(0) - mu.probs().col(0);
}

double sum_weights(const WeightedIndex& pi, const std::vector<Index>& subset) {
  double s = 0;
  for (Index v : subset) s += pi.weight(v);
  return s;
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

void VerificationReport::expect_at_most(std::string name, double measured, double bound) {
  checks.push_back({std::move(name), measured <= bound, measured, bound});
}

void VerificationReport::expect_greater(std::string name, double measured, double bound) {
  checks.push_back({std::move(name), measured > bound, measured, bound});
}

void VerificationReport::record(std::string name, double measured) {
  checks.push_back({std::move(name), true, measured, measured});
}

BinningResult geometric_binning(const VectorXd& a, const VectorXd& pi, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("binning cutoff must lie in (0, 1]");
  if (a.size() != pi.size() || a.size() == 0) {
    throw InvalidArgument("binning needs one weight per value");
  }
  if ((pi.array() < 0.0).any()) throw InvalidArgument("binning weights must be nonnegative");
  if ((a.array() < 0.0).any() || (a.array() > 1.0).any()) {
    throw InvalidArgument("binning values must lie in [0, 1]");
  }
  BinningResult out;
  out.cutoff = beta;
  out.levels = static_cast<int>(std::ceil(std::log2(1.0 / beta)));
  std::vector<std::vector<Index>> bins(static_cast<std::size_t>(std::max(out.levels, 0)));
  std::vector<double> mass(bins.size(), 0.0);
  for (Index v = 0; v < a.size(); ++v) {
    if (a(v) <= beta) continue;
    int j = 0;
    while (a(v) <= std::ldexp(1.0, -(j + 1))) ++j;
    if (j >= out.levels) continue;
    bins[static_cast<std::size_t>(j)].push_back(v);
    mass[static_cast<std::size_t>(j)] += pi(v);
  }
  int best = -1;
  double best_value = 0;
  for (int j = 0; j < out.levels; ++j) {
    const double value = mass[static_cast<std::size_t>(j)] * std::ldexp(1.0, -(j + 1));
    if (value > best_value) {
      best = j;
      best_value = value;
    }
  }
  if (best < 0) throw InvalidArgument("mass below cutoff");
  out.bin = best;
  out.selected = bins[static_cast<std::size_t>(best)];
  out.mass = mass[static_cast<std::size_t>(best)];
  out.bin_floor_value = best_value;
  double lo = 1.0;
  for (Index v : out.selected) lo = std::min(lo, a(v));
  out.score = out.mass * lo;
  out.guarantee = (pi.dot(a) - beta) / (2.0 * out.levels);
  return out;
}

BinningResult geometric_binning(const VectorXd& a, const WeightedIndex& pi, double beta) {
  return geometric_binning(a, pi.weights(), beta);
}

AgnosticHardFamily build_agnostic_family(const ConceptClass& cls, const DualWitness& witness) {
  const IndexedMatrix D = build_difference_matrix(cls);
  const MatrixXd& u = witness.U.values();
  if (u.rows() != D.rows() || u.cols() != D.cols() || witness.U.col_labels() != cls.domain()) {
    throw DomainMismatch("witness does not match the difference matrix of the class");
  }
  check_unit_mass(u);

  AgnosticHardFamily out{cls, WeightedIndex::uniform({"-"}), {}, witness.U, 0.0, {}};
  const MatrixXd& d = D.values();
  const Index k = cls.size();
  std::vector<std::string> labels;
  std::vector<double> weights;
  double identity = 0;
  double identity_mu = 0;
  double recovery = 0;
  double marginals = 0;
  double orientation = 0;
  for (Index i = 0; i < u.rows(); ++i) {
    const double mass = u.row(i).cwiseAbs().sum();
    if (mass == 0.0) continue;
    Eigen::MatrixX2d lp(cls.domain_size(), 2);
    lp.col(0) = u.row(i).transpose().cwiseMax(0.0) / mass;
    lp.col(1) = (-u.row(i).transpose()).cwiseMax(0.0) / mass;
    Eigen::MatrixX2d mp(cls.domain_size(), 2);
    mp.col(0) = lp.col(1);
    mp.col(1) = lp.col(0);
    AgnosticMember m{i / k, i % k, mass, LabeledDistribution(cls.domain(), lp),
                     LabeledDistribution(cls.domain(), mp), 0.0};
    const SignVector c = cls.concept_vector(m.first);
    const SignVector c2 = cls.concept_vector(m.second);
    m.loss_gap = population_loss(m.lambda, c2) - population_loss(m.lambda, c);
    const double du = d.row(i).dot(u.row(i));
    identity = std::max(identity, std::abs(du - mass * m.loss_gap));
    identity_mu = std::max(identity_mu, std::abs(du - mass * (population_loss(m.mu, c) -
                                                              population_loss(m.mu, c2))));
    recovery = std::max(recovery, (u.row(i).transpose() -
                                   mass * plus_difference(m.lambda, m.mu)).cwiseAbs().maxCoeff());
    marginals = std::max(marginals, (m.lambda.marginal() - m.mu.marginal()).cwiseAbs().maxCoeff());
    orientation = std::max(orientation, -m.loss_gap);
    labels.push_back(D.row_labels()[static_cast<std::size_t>(i)]);
    weights.push_back(mass);
    out.members.push_back(std::move(m));
  }
  out.pi = weights_of(labels, weights);
  out.inner_product = frobenius_dot(d, u);
  double expected_gap = 0;
  for (const auto& m : out.members) expected_gap += m.weight * m.loss_gap;

  out.report.expect_at_most("row identity for lambda", identity, kIdentityTolerance);
  out.report.expect_at_most("row identity for mu", identity_mu, kIdentityTolerance);
  out.report.expect_at_most("D.U equals expected loss gap",
                            std::abs(out.inner_product - expected_gap), kIdentityTolerance);
  out.report.expect_at_most("witness recovery", recovery, kIdentityTolerance);
  out.report.expect_at_most("shared marginals", marginals, kIdentityTolerance);
  out.report.expect_at_most("rows oriented", orientation, kIdentityTolerance);
  return out;
}

double cross_optimality_gap(const LabeledDistribution& lambda, const LabeledDistribution& mu,
                            const ConceptClass& cls) {
  if (lambda.domain() != mu.domain() || lambda.domain() != cls.domain()) {
    throw DomainMismatch("distributions and class use different domains");
  }
  const Eigen::MatrixX2d sum = lambda.probs() + mu.probs();
  const double joint = sum.rowwise().minCoeff().sum();
  double best_lambda = std::numeric_limits<double>::infinity();
  double best_mu = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < cls.size(); ++c) {
    const SignVector h = cls.concept_vector(c);
    best_lambda = std::min(best_lambda, population_loss(lambda, h));
    best_mu = std::min(best_mu, population_loss(mu, h));
  }
  return joint - best_lambda - best_mu;
}

RefinedAgnosticFamily refine_agnostic_family(const AgnosticHardFamily& family, double alpha,
                                             const SdpSettings& settings) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(family.inner_product > alpha)) throw InvalidArgument("D.U must exceed alpha");
  const Index count = static_cast<Index>(family.members.size());
  VectorXd a(count);
  for (Index v = 0; v < count; ++v) {
    a(v) = std::clamp(family.members[static_cast<std::size_t>(v)].loss_gap, 0.0, 1.0);
  }

  RefinedAgnosticFamily out{.family = family, .alpha = alpha};
  out.tau = alpha / family.inner_product;
  out.binning = geometric_binning(a, family.pi, alpha / 4.0);
  const double mass_s = sum_weights(family.pi, out.binning.selected);
  const double t = out.tau * mass_s;

  MatrixXd ut = MatrixXd::Zero(family.U.rows(), family.U.cols());
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<AgnosticMember> members;
  double recovery = 0;
  double property1 = std::numeric_limits<double>::infinity();
  out.min_property2 = std::numeric_limits<double>::infinity();
  out.min_cross_optimality = std::numeric_limits<double>::infinity();
  for (Index v : out.binning.selected) {
    const AgnosticMember& m = family.members[static_cast<std::size_t>(v)];
    AgnosticMember r = m;
    r.mu = mix(m.lambda, m.mu, t);
    r.weight = m.weight / mass_s;
    const Index row = difference_row(m.first, m.second, family.cls.size());
    ut.row(row) = out.tau * family.U.values().row(row);
    recovery = std::max(recovery, (ut.row(row).transpose() -
                                   r.weight * plus_difference(r.lambda, r.mu)).cwiseAbs().maxCoeff());
    const SignVector c = family.cls.concept_vector(m.first);
    const SignVector c2 = family.cls.concept_vector(m.second);
    property1 = std::min(property1, population_loss(r.lambda, c2) - population_loss(r.lambda, c));
    out.min_property2 = std::min(out.min_property2,
                                 population_loss(r.mu, c2) - population_loss(r.mu, c));
    out.min_cross_optimality =
        std::min(out.min_cross_optimality, cross_optimality_gap(r.lambda, r.mu, family.cls));
    labels.push_back(family.pi.support()[static_cast<std::size_t>(v)]);
    weights.push_back(r.weight);
    members.push_back(std::move(r));
  }
  out.U_tilde = IndexedMatrix(family.U.row_labels(), family.U.col_labels(), ut);

  out.family.pi = weights_of(labels, weights);
  out.family.members = std::move(members);
  out.family.U = out.U_tilde;
  out.family.inner_product = frobenius_dot(build_difference_matrix(family.cls).values(), ut);

  out.gamma2_star_U = gamma2_dual(family.U, settings).value;
  out.gamma2_star_U_tilde = gamma2_dual(out.U_tilde, settings).value;

  auto& rep = out.report;
  rep.expect_at_most("refined witness recovery", recovery, kIdentityTolerance);
  rep.expect_at_most("binning guarantee", out.binning.guarantee, out.binning.score);
  rep.expect_at_most("lambda gap on S (property 1)", out.binning.score / mass_s,
                     property1 + kIdentityTolerance);
  rep.expect_at_most("gamma2* contraction (property 3)", out.gamma2_star_U_tilde,
                     out.tau * out.gamma2_star_U + kCertifiedTolerance);
  rep.record("mu gap on S (property 2, diagnostic)", out.min_property2);
  rep.record("cross optimality gap (diagnostic)", out.min_cross_optimality);
  return out;
}

RealizableHardFamily build_realizable_family(const ConceptClass& cls, const DualWitness& witness,
                                             double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  const MatrixXd& u = witness.U.values();
  if (u.rows() != cls.size() || witness.U.col_labels() != labeled_column_labels(cls.domain()) ||
      witness.U.row_labels() != cls.names()) {
    throw DomainMismatch("witness does not match the class");
  }
  check_unit_mass(u);
  if (!in_eta_dual_set(cls, u, kNormalizationTolerance)) {
    throw InvalidArgument("witness is not in the eta dual set");
  }

  RealizableHardFamily out{cls, WeightedIndex::uniform({"-"}), {}, witness.U, 0.0, alpha, {}};
  std::vector<std::string> labels;
  std::vector<double> weights;
  double mu_loss = 0;
  double recovery = 0;
  double surplus = 0;  // sum of u_wrong - alpha |u_correct|
  for (Index c = 0; c < cls.size(); ++c) {
    const SignVector cv = cls.concept_vector(c);
    for (Index x = 0; x < cls.domain_size(); ++x) {
      surplus += u(c, labeled_column(x, -cv(x))) - alpha * std::abs(u(c, labeled_column(x, cv(x))));
    }
    const double mass = u.row(c).cwiseAbs().sum();
    if (mass == 0.0) continue;
    Eigen::MatrixX2d lp(cls.domain_size(), 2);
    Eigen::MatrixX2d mp(cls.domain_size(), 2);
    for (Index x = 0; x < cls.domain_size(); ++x) {
      for (int y : {1, -1}) {
        const double e = u(c, labeled_column(x, y));
        lp(x, y > 0 ? 0 : 1) = 2.0 * std::max(e, 0.0) / mass;
        mp(x, y > 0 ? 0 : 1) = 2.0 * std::max(-e, 0.0) / mass;
      }
    }
    RealizableMember m{c, mass, LabeledDistribution(cls.domain(), lp),
                       LabeledDistribution(cls.domain(), mp), 0.0};
    m.loss = population_loss(m.lambda, cv);
    mu_loss = std::max(mu_loss, population_loss(m.mu, cv));
    recovery = std::max(recovery, (2.0 * u.row(c).transpose() -
                                   mass * (m.lambda.flat() - m.mu.flat())).cwiseAbs().maxCoeff());
    out.Delta += mass * m.loss;
    labels.push_back(cls.name(c));
    weights.push_back(mass);
    out.members.push_back(std::move(m));
  }
  out.pi = weights_of(labels, weights);

  out.report.expect_at_most("mu realizable", mu_loss, kIdentityTolerance);
  out.report.expect_at_most("witness recovery", recovery, kIdentityTolerance);
  out.report.expect_at_most("Delta identity",
                            std::abs((1.0 + alpha) * out.Delta - 2.0 * alpha - 2.0 * surplus),
                            kIdentityTolerance);
  out.report.expect_greater("Delta above 2 alpha / (1 + alpha)", out.Delta,
                            2.0 * alpha / (1.0 + alpha));
  if (!(out.Delta > 2.0 * alpha / (1.0 + alpha))) throw VerificationError("witness too weak");
  return out;
}

RefinedRealizableFamily refine_realizable_family(const RealizableHardFamily& family,
                                                 const SdpSettings& settings) {
  const double alpha = family.alpha;
  if (!(family.Delta > 2.0 * alpha / (1.0 + alpha))) throw VerificationError("witness too weak");
  const Index count = static_cast<Index>(family.members.size());
  VectorXd a(count);
  for (Index v = 0; v < count; ++v) {
    a(v) = std::clamp(family.members[static_cast<std::size_t>(v)].loss, 0.0, 1.0);
  }

  RefinedRealizableFamily out{.family = family};
  const double beta = alpha / (1.0 + alpha);
  out.binning = geometric_binning(a, family.pi, beta);
  out.tau = 2.0 * alpha / ((1.0 + alpha) * family.Delta);
  out.level = out.tau * (family.Delta - beta) / (2.0 * out.binning.levels);
  const double mass_s = sum_weights(family.pi, out.binning.selected);
  const double t = out.tau * mass_s;

  const MatrixXd u_lemma = 2.0 * family.U.values();
  MatrixXd ut = MatrixXd::Zero(u_lemma.rows(), u_lemma.cols());
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<RealizableMember> members;
  double recovery = 0;
  double mu_loss = 0;
  double lambda_floor = std::numeric_limits<double>::infinity();
  double delta = 0;
  for (Index v : out.binning.selected) {
    const RealizableMember& m = family.members[static_cast<std::size_t>(v)];
    RealizableMember r = m;
    r.lambda = mix(m.mu, m.lambda, t);
    r.weight = m.weight / mass_s;
    const SignVector cv = family.cls.concept_vector(m.concept_index);
    r.loss = population_loss(r.lambda, cv);
    ut.row(m.concept_index) = out.tau * u_lemma.row(m.concept_index);
    recovery = std::max(recovery, (ut.row(m.concept_index).transpose() -
                                   r.weight * (r.lambda.flat() - r.mu.flat())).cwiseAbs().maxCoeff());
    mu_loss = std::max(mu_loss, population_loss(r.mu, cv));
    lambda_floor = std::min(lambda_floor, r.loss);
    delta += r.weight * r.loss;
    labels.push_back(family.cls.name(m.concept_index));
    weights.push_back(r.weight);
    members.push_back(std::move(r));
  }
  out.U_tilde = IndexedMatrix(family.U.row_labels(), family.U.col_labels(), ut);
  out.family.pi = weights_of(labels, weights);
  out.family.members = std::move(members);
  out.family.U = IndexedMatrix(family.U.row_labels(), family.U.col_labels(), 0.5 * ut);
  out.family.Delta = delta;

  out.gamma2_star_U = gamma2_dual(IndexedMatrix(family.U.row_labels(), family.U.col_labels(),
                                                u_lemma),
                                  settings)
                          .value;
  out.gamma2_star_U_tilde = gamma2_dual(out.U_tilde, settings).value;

  auto& rep = out.report;
  rep.expect_at_most("refined witness recovery", recovery, kIdentityTolerance);
  rep.expect_at_most("binning guarantee", out.binning.guarantee, out.binning.score);
  rep.expect_at_most("lambda~ loss floor (property 1)", out.tau * out.binning.score,
                     lambda_floor + kIdentityTolerance);
  rep.expect_greater("lambda~ loss above level", lambda_floor, out.level);
  rep.expect_at_most("mu~ realizable (property 2)", mu_loss, kIdentityTolerance);
  rep.expect_at_most("gamma2* contraction (property 3)", out.gamma2_star_U_tilde,
                     out.tau * out.gamma2_star_U + kCertifiedTolerance);
  return out;
}

RealizableHardFamily restrict_above(const RealizableHardFamily& family, double level) {
  RealizableHardFamily out = family;
  out.members.clear();
  std::vector<std::string> labels;
  std::vector<double> weights;
  for (const auto& m : family.members) {
    if (m.loss > level) {
      out.members.push_back(m);
      labels.push_back(family.cls.name(m.concept_index));
      weights.push_back(m.weight);
    }
  }
  if (out.members.empty()) throw VerificationError("no concept has loss above the level");
  out.pi = weights_of(labels, weights);
  MatrixXd u = MatrixXd::Zero(family.U.rows(), family.U.cols());
  out.Delta = 0;
  for (auto& m : out.members) {
    m.weight = out.pi.weight_of(family.cls.name(m.concept_index));
    u.row(m.concept_index) = 0.5 * m.weight * (m.lambda.flat() - m.mu.flat()).transpose();
    out.Delta += m.weight * m.loss;
  }
  out.U = IndexedMatrix(family.U.row_labels(), family.U.col_labels(), std::move(u));
  out.report = {};
  return out;
}

MixedFamily mix_sigma(const RealizableHardFamily& family, double level) {
  MixedFamily out{family, level, {}};
  out.family.report = {};
  double mu_loss = 0;
  double halving = 0;
  double bayes_floor = std::numeric_limits<double>::infinity();
  double bayes_slack = std::numeric_limits<double>::infinity();
  MatrixXd u = MatrixXd::Zero(family.U.rows(), family.U.cols());
  out.family.Delta = 0;
  for (auto& m : out.family.members) {
    if (!(m.loss > level)) throw VerificationError("mix_sigma needs loss above the level");
    const SignVector cv = family.cls.concept_vector(m.concept_index);
    const LabeledDistribution sigma =
        LabeledDistribution::labeled_by(family.cls.domain(), m.lambda.marginal(), cv);
    const LabeledDistribution lambda = mix(m.lambda, sigma, 0.5);
    const LabeledDistribution mu = mix(m.mu, sigma, 0.5);
    halving = std::max(halving, ((lambda.flat() - mu.flat()) -
                                 0.5 * (m.lambda.flat() - m.mu.flat())).cwiseAbs().maxCoeff());
    mu_loss = std::max(mu_loss, population_loss(mu, cv));
    const double bayes = bayes_error(lambda);
    bayes_floor = std::min(bayes_floor, bayes);
    bayes_slack = std::min(bayes_slack, bayes - 0.5 * m.loss);
    m.lambda = lambda;
    m.mu = mu;
    m.loss = population_loss(lambda, cv);
    u.row(m.concept_index) = 0.5 * m.weight * (lambda.flat() - mu.flat()).transpose();
    out.family.Delta += m.weight * m.loss;
  }
  out.family.U = IndexedMatrix(family.U.row_labels(), family.U.col_labels(), std::move(u));
  out.report.expect_at_most("mu^ realizable", mu_loss, kIdentityTolerance);
  out.report.expect_at_most("difference halved", halving, kIdentityTolerance);
  out.report.expect_at_most("bayes error at least half the loss", -bayes_slack, kIdentityTolerance);
  out.report.expect_greater("bayes error above level / 2", bayes_floor, 0.5 * level);
  return out;
}

MixedFamily mix_sigma(const RealizableHardFamily& family) { return mix_sigma(family, family.alpha); }

IndexedMatrix difference_rows(const AgnosticHardFamily& family) {
  MatrixXd m(static_cast<Index>(family.members.size()), family.cls.domain_size());
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const auto& member = family.members[i];
    m.row(static_cast<Index>(i)) = plus_difference(member.lambda, member.mu).transpose();
  }
  return IndexedMatrix(family.pi.support(), family.cls.domain(), std::move(m));
}

IndexedMatrix difference_rows(const RealizableHardFamily& family) {
  MatrixXd m(static_cast<Index>(family.members.size()), 2 * family.cls.domain_size());
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const auto& member = family.members[i];
    m.row(static_cast<Index>(i)) = (member.lambda.flat() - member.mu.flat()).transpose();
  }
  return IndexedMatrix(family.pi.support(), labeled_column_labels(family.cls.domain()),
                       std::move(m));
}

ReweightResult reweight_pi_hat(const IndexedMatrix& U_tilde, const IndexedMatrix& M,
                               const SdpSettings& settings, int column_cap) {
  if (U_tilde.col_labels() != M.col_labels()) {
    throw DomainMismatch("U~ and M have different columns");
  }
  std::vector<std::string> labels;
  std::vector<Index> m_rows;
  std::vector<double> pi_tilde;
  for (Index i = 0; i < U_tilde.rows(); ++i) {
    const double mass = U_tilde.values().row(i).cwiseAbs().sum();
    if (mass == 0.0) continue;
    const std::string& label = U_tilde.row_labels()[static_cast<std::size_t>(i)];
    const Index r = M.row_index(label);
    if (r < 0) throw DomainMismatch("row " + label + " of U~ is missing from M");
    const double m_mass = M.values().row(r).cwiseAbs().sum();
    if (!(m_mass > 0.0)) throw InvalidArgument("row " + label + " of M is zero");
    labels.push_back(label);
    m_rows.push_back(r);
    pi_tilde.push_back(mass / m_mass);
  }
  if (labels.empty()) throw InvalidArgument("U~ is zero");
  const Index k = static_cast<Index>(labels.size());
  MatrixXd mk(k, M.cols());
  for (Index i = 0; i < k; ++i) mk.row(i) = M.values().row(m_rows[static_cast<std::size_t>(i)]);

  ReweightResult out{weights_of(labels, pi_tilde), 0.0, 4.0 * gamma2_dual(U_tilde, settings).value,
                     false, 0};
  if (M.cols() > column_cap) {
    out.capped = true;
    out.norm = inf_to_l2(mk, out.pi_hat.weights(),
                         {NormMethod::sampled, column_cap, 256, settings.seed})
                   .value;
    return out;
  }
  const InfToL2Options exact{NormMethod::exact, column_cap, 0, 0};
  InfToL2Result start = inf_to_l2(mk, out.pi_hat.weights(), exact);
  out.norm = start.value;

  // min t s.t. sum_v pi_v (M f)_v^2 <= t for every cut f, pi in the simplex.
  std::vector<VectorXd> cuts{mk.operator*(start.maximizer).cwiseAbs2()};
  sdp::Settings<double> lp_settings;
  lp_settings.tolerance = 1e-10;
  lp_settings.max_iterations = 200;
  while (out.cuts < kMaxCuts) {
    sdp::Problem<double> p;
    for (Index v = 0; v < k; ++v) p.add_lp_variable(0.0);
    const Index t = p.add_lp_variable(1.0);
    sdp::Constraint<double> simplex;
    for (Index v = 0; v < k; ++v) simplex.lp.push_back({v, 1.0});
    simplex.rhs = 1.0;
    p.constraints.push_back(simplex);
    for (const VectorXd& q : cuts) {
      const Index slack = p.add_lp_variable(0.0);
      sdp::Constraint<double> row;
      for (Index v = 0; v < k; ++v) row.lp.push_back({v, q(v)});
      row.lp.push_back({slack, 1.0});
      row.lp.push_back({t, -1.0});
      p.constraints.push_back(row);
    }
    const auto sol = sdp::solve(p, lp_settings);
    ++out.cuts;
    VectorXd w = sol.x.head(k).cwiseMax(0.0);
    if (!(w.sum() > 0.0)) break;
    w /= w.sum();
    const InfToL2Result eval = inf_to_l2(mk, w, exact);
    if (eval.value < out.norm) {
      out.norm = eval.value;
      out.pi_hat = WeightedIndex(labels, w);
    }
    const double level = sol.x(t);
    if (eval.value * eval.value <= level + 1e-10 * std::max(1.0, level)) break;
    cuts.push_back(mk.operator*(eval.maximizer).cwiseAbs2());
  }
  if (out.norm > out.bound + kCertifiedTolerance) {
    throw VerificationError("reweighted norm exceeds 4 gamma2*(U~)");
  }
  return out;
}

KlDiagnostic kl_diagnostic(const std::vector<LabeledDistribution>& lambdas,
                           const std::vector<LabeledDistribution>& mus, const WeightedIndex& pi,
                           double operator_norm, const RandomizerSpec& spec,
                           const PrivacyParams& params, Index n) {
  if (lambdas.size() != mus.size() || static_cast<Index>(lambdas.size()) != pi.size()) {
    throw InvalidArgument("kl_diagnostic needs one pair per weight");
  }
  KlDiagnostic out;
  for (std::size_t v = 0; v < lambdas.size(); ++v) {
    const double w = pi.weight(static_cast<Index>(v));
    if (w == 0.0) continue;
    out.expected_kl += w * transcript_kl(lambdas[v], mus[v], spec, params, n);
  }
  const double eps = params.epsilon();
  out.norm_bound = static_cast<double>(n) * eps * eps * operator_norm * operator_norm;
  out.ratio = out.norm_bound > 0.0 ? out.expected_kl / out.norm_bound : 0.0;
  return out;
}

DistinguishingReport distinguishing_harness(const AgnosticLearner& learner,
                                            const LabeledDistribution& lambda,
                                            const LabeledDistribution& mu, Index n, Index trials,
                                            std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  if (n < 1) throw InvalidArgument("sample size must be positive");
  const Index k = learner.concept_class().size();
  VectorXd counts_lambda = VectorXd::Zero(k);
  VectorXd counts_mu = VectorXd::Zero(k);
  for (Index t = 0; t < trials; ++t) {
    const auto base = static_cast<std::uint64_t>(4 * t);
    const Dataset a = sample(lambda, n, derive_seed(seed, base));
    const Dataset b = sample(mu, n, derive_seed(seed, base + 1));
    counts_lambda(learner.learn(a, derive_seed(seed, base + 2)).chosen_index) += 1.0;
    counts_mu(learner.learn(b, derive_seed(seed, base + 3)).chosen_index) += 1.0;
  }
  DistinguishingReport out;
  out.trials = trials;
  out.empirical_tv = 0.5 * (counts_lambda - counts_mu).cwiseAbs().sum() / static_cast<double>(trials);
  out.transcript_kl = transcript_kl(lambda, mu, learner.randomizer(),
                                    PrivacyParams(learner.config().epsilon), n);
  out.pinsker_bound = std::sqrt(out.transcript_kl / 2.0);
  return out;
}

}  // namespace ldpg
