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
#include <random>
#include <set>

#include "ldpg/error.hpp"
#include "ldpg/hard_instances.hpp"
#include "ldpg/matrices.hpp"
#include "ldpg/zoo.hpp"

namespace ldpg {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const char* const kZoo[] = {"thresholds(4)", "points(4)", "parities(2)", "conjunctions(2)",
                            "negation-closure(points(3))"};

std::string failed_checks(const VerificationReport& report) {
  std::string out;
  for (const auto& c : report.checks) {
    if (!c.passed) {
      out += c.name + " (" + std::to_string(c.measured) + " vs " + std::to_string(c.bound) + ") ";
    }
  }
  return out;
}

// Two concepts on {x1, x2} that differ only at x2.
ConceptClass two_concepts() {
  return ConceptClass({"x1", "x2"}, {"c1", "c2"}, Eigen::MatrixXi{{1, 1}, {1, -1}});
}

DualWitness single_entry_witness(const ConceptClass& cls) {
  const IndexedMatrix D = build_difference_matrix(cls);
  MatrixXd u = MatrixXd::Zero(D.rows(), D.cols());
  u(difference_row(0, 1, cls.size()), 1) = 1.0;
  DualWitness w;
  w.U = IndexedMatrix(D.row_labels(), D.col_labels(), u);
  return w;
}

// One concept on {x1, x2}; the witness row puts +1/2 on (x1, -c(x1)) and
// -1/2 on (x1, c(x1)).
ConceptClass lone_concept() { return ConceptClass({"x1", "x2"}, {"c"}, Eigen::MatrixXi{{1, 1}}); }

DualWitness warm_up_witness(const ConceptClass& cls) {
  MatrixXd u = MatrixXd::Zero(1, 4);
  u(0, labeled_column(0, -1)) = 0.5;
  u(0, labeled_column(0, +1)) = -0.5;
  DualWitness w;
  w.U = IndexedMatrix(cls.names(), labeled_column_labels(cls.domain()), u);
  return w;
}

double binning_oracle_guarantee(const VectorXd& a, const VectorXd& pi, double beta) {
  return (pi.dot(a) - beta) / (2.0 * std::ceil(std::log2(1.0 / beta)));
}

TEST(Binning, EqualValues) {
  const BinningResult r = geometric_binning(VectorXd{{0.5, 0.5}}, VectorXd{{0.5, 0.5}}, 0.1);
  EXPECT_EQ(r.selected, (std::vector<Index>{0, 1}));
  EXPECT_DOUBLE_EQ(r.mass, 1.0);
  EXPECT_DOUBLE_EQ(r.score, 0.5);
  EXPECT_DOUBLE_EQ(r.bin_floor_value, 0.25);
  EXPECT_EQ(r.bin, 1);
  EXPECT_EQ(r.levels, 4);
  EXPECT_NEAR(r.guarantee, 0.05, 1e-15);
}

TEST(Binning, SmallValueIsDiscarded) {
  const BinningResult r = geometric_binning(VectorXd{{1.0, 0.01}}, VectorXd{{0.5, 0.5}}, 0.1);
  EXPECT_EQ(r.selected, (std::vector<Index>{0}));
  EXPECT_DOUBLE_EQ(r.score, 0.5);
}

TEST(Binning, SingleIndex) {
  const BinningResult r = geometric_binning(VectorXd{{1.0}}, VectorXd{{1.0}}, 0.5);
  EXPECT_EQ(r.selected, (std::vector<Index>{0}));
  EXPECT_DOUBLE_EQ(r.score, 1.0);
}

TEST(Binning, Errors) {
  EXPECT_THROW(geometric_binning(VectorXd{{0.05, 0.1}}, VectorXd{{0.5, 0.5}}, 0.1), InvalidArgument);
  EXPECT_THROW(geometric_binning(VectorXd{{0.5}}, VectorXd{{1.0}}, 0.0), InvalidArgument);
  EXPECT_THROW(geometric_binning(VectorXd{{1.5}}, VectorXd{{1.0}}, 0.5), InvalidArgument);
}

TEST(Binning, GuaranteeOnRandomTriples) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 1000; ++t) {
    const Index k = 1 + t % 12;
    VectorXd a(k), pi(k);
    for (Index i = 0; i < k; ++i) {
      a(i) = u(rng);
      pi(i) = e(rng);
    }
    pi /= pi.sum();
    const double beta = 0.01 + 0.98 * u(rng);
    if ((a.array() > beta).count() == 0) continue;
    const BinningResult r = geometric_binning(a, pi, beta);
    double mass = 0, lo = 1.0;
    for (Index v : r.selected) {
      mass += pi(v);
      lo = std::min(lo, a(v));
      EXPECT_GT(a(v), beta);
      EXPECT_GT(a(v), std::ldexp(1.0, -(r.bin + 1)));
      EXPECT_LE(a(v), std::ldexp(1.0, -r.bin));
    }
    EXPECT_NEAR(r.score, mass * lo, 1e-15);
    EXPECT_GE(r.score + 1e-15, binning_oracle_guarantee(a, pi, beta));
  }
}

TEST(AgnosticFamily, SingleEntryWitness) {
  const ConceptClass cls = two_concepts();
  const AgnosticHardFamily fam = build_agnostic_family(cls, single_entry_witness(cls));
  EXPECT_TRUE(fam.report.all_passed()) << failed_checks(fam.report);
  ASSERT_EQ(fam.members.size(), 1u);
  const AgnosticMember& m = fam.members[0];
  EXPECT_EQ(m.first, 0);
  EXPECT_EQ(m.second, 1);
  EXPECT_DOUBLE_EQ(m.weight, 1.0);
  EXPECT_DOUBLE_EQ(m.lambda.prob(1, +1), 1.0);
  EXPECT_DOUBLE_EQ(m.mu.prob(1, -1), 1.0);
  EXPECT_DOUBLE_EQ(population_loss(m.lambda, cls.concept_vector(0)), 0.0);
  EXPECT_DOUBLE_EQ(population_loss(m.lambda, cls.concept_vector(1)), 1.0);
  EXPECT_DOUBLE_EQ(fam.inner_product, 1.0);
  EXPECT_DOUBLE_EQ(cross_optimality_gap(m.lambda, m.mu, cls), 1.0);
  EXPECT_DOUBLE_EQ(cross_optimality_gap(m.lambda, m.lambda, cls), 0.0);
}

TEST(AgnosticFamily, RefineSingleEntry) {
  const ConceptClass cls = two_concepts();
  const AgnosticHardFamily fam = build_agnostic_family(cls, single_entry_witness(cls));
  const RefinedAgnosticFamily r = refine_agnostic_family(fam, 0.25);
  EXPECT_TRUE(r.report.all_passed()) << failed_checks(r.report);
  EXPECT_DOUBLE_EQ(r.tau, 0.25);
  EXPECT_DOUBLE_EQ(r.binning.mass, 1.0);
  const AgnosticMember& m = r.family.members[0];
  EXPECT_NEAR(m.mu.prob(1, +1), 0.75, 1e-15);
  EXPECT_NEAR(m.mu.prob(1, -1), 0.25, 1e-15);
  EXPECT_NEAR(r.gamma2_star_U_tilde, 0.25 * r.gamma2_star_U, 1e-6);
  EXPECT_THROW(refine_agnostic_family(fam, 1.0), InvalidArgument);
}

TEST(AgnosticFamily, RejectsZeroWitness) {
  const ConceptClass cls = two_concepts();
  DualWitness w = single_entry_witness(cls);
  w.U = IndexedMatrix(w.U.row_labels(), w.U.col_labels(), MatrixXd::Zero(w.U.rows(), w.U.cols()));
  EXPECT_THROW(build_agnostic_family(cls, w), InvalidArgument);
}

TEST(AgnosticFamily, ZooWitnessesSatisfyIdentities) {
  for (const char* spec : kZoo) {
    SCOPED_TRACE(spec);
    const ConceptClass cls = zoo(spec);
    const IndexedMatrix D = build_difference_matrix(cls);
    const double alpha = 0.1;
    const DualWitness w = agnostic_dual_witness(D, alpha);
    const AgnosticHardFamily fam = build_agnostic_family(cls, w);
    EXPECT_TRUE(fam.report.all_passed()) << failed_checks(fam.report);
    double expected_gap = 0;
    for (const auto& m : fam.members) {
      EXPECT_LE((m.lambda.marginal() - m.mu.marginal()).cwiseAbs().maxCoeff(), 1e-12);
      expected_gap += m.weight * m.loss_gap;
    }
    EXPECT_NEAR(fam.inner_product, (D.values().cwiseProduct(w.U.values())).sum(), 1e-12);
    EXPECT_NEAR(fam.inner_product, expected_gap, 1e-12);

    const RefinedAgnosticFamily r = refine_agnostic_family(fam, alpha);
    EXPECT_TRUE(r.report.all_passed()) << failed_checks(r.report);
    EXPECT_LE(r.gamma2_star_U_tilde, alpha * r.gamma2_star_U / fam.inner_product + 1e-4);
    const double levels = std::ceil(std::log2(4.0 / alpha));
    EXPECT_GE(r.binning.score / r.binning.mass + 1e-12, (fam.inner_product - alpha / 4.0) / (2.0 * levels));

    const ReweightResult rw = reweight_pi_hat(r.U_tilde, difference_rows(r.family));
    EXPECT_FALSE(rw.capped);
    EXPECT_LE(rw.norm, rw.bound + 1e-4);
    EXPECT_NEAR(rw.bound, 4.0 * r.gamma2_star_U_tilde, 1e-3);
    for (Index i = 0; i < rw.pi_hat.size(); ++i) {
      if (rw.pi_hat.weight(i) > 0) {
        EXPECT_GT(r.family.pi.weight_of(rw.pi_hat.support()[static_cast<std::size_t>(i)]), 0.0);
      }
    }
  }
}

TEST(RealizableFamily, WarmUpInstance) {
  const ConceptClass cls = lone_concept();
  const RealizableHardFamily fam = build_realizable_family(cls, warm_up_witness(cls), 0.2);
  EXPECT_TRUE(fam.report.all_passed()) << failed_checks(fam.report);
  ASSERT_EQ(fam.members.size(), 1u);
  EXPECT_DOUBLE_EQ(fam.members[0].lambda.prob(0, -1), 1.0);
  EXPECT_DOUBLE_EQ(fam.members[0].mu.prob(0, +1), 1.0);
  EXPECT_DOUBLE_EQ(fam.Delta, 1.0);

  const RefinedRealizableFamily r = refine_realizable_family(fam);
  EXPECT_TRUE(r.report.all_passed()) << failed_checks(r.report);
  EXPECT_NEAR(r.tau, 1.0 / 3.0, 1e-15);
  const RealizableMember& m = r.family.members[0];
  EXPECT_NEAR(population_loss(m.lambda, cls.concept_vector(0)), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(population_loss(m.mu, cls.concept_vector(0)), 0.0);
  const VectorXd diff = m.lambda.flat() - m.mu.flat();
  const VectorXd want = r.tau * (fam.members[0].lambda.flat() - fam.members[0].mu.flat());
  EXPECT_LE((diff - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RealizableFamily, WeakWitnessIsRejected) {
  const ConceptClass cls = lone_concept();
  DualWitness w = warm_up_witness(cls);
  w.U = IndexedMatrix(w.U.row_labels(), w.U.col_labels(), MatrixXd{{0.25, 0.25, -0.5, 0.0}});
  const RealizableHardFamily fam = build_realizable_family(cls, w, 0.2);
  EXPECT_DOUBLE_EQ(fam.Delta, 0.5);
  EXPECT_THROW(build_realizable_family(cls, w, 0.5), VerificationError);
}

TEST(RealizableFamily, MixSigmaOnWarmUp) {
  const ConceptClass cls = lone_concept();
  const RealizableHardFamily fam = build_realizable_family(cls, warm_up_witness(cls), 0.2);
  const MixedFamily mixed = mix_sigma(fam);
  EXPECT_TRUE(mixed.report.all_passed()) << failed_checks(mixed.report);
  const RealizableMember& m = mixed.family.members[0];
  EXPECT_DOUBLE_EQ(m.lambda.prob(0, +1), 0.5);
  EXPECT_DOUBLE_EQ(m.lambda.prob(0, -1), 0.5);
  EXPECT_DOUBLE_EQ(bayes_error(m.lambda), 0.5);
  EXPECT_EQ(population_loss(m.mu, cls.concept_vector(0)), 0.0);
  EXPECT_THROW(mix_sigma(fam, 1.0), VerificationError);
}

TEST(RealizableFamily, ZooWitnessesSatisfyIdentities) {
  for (const char* spec : kZoo) {
    SCOPED_TRACE(spec);
    const ConceptClass cls = zoo(spec);
    const double alpha = 0.1;
    const DualWitness w = eta_dual_witness(cls, alpha);
    const RealizableHardFamily fam = build_realizable_family(cls, w, alpha);
    EXPECT_TRUE(fam.report.all_passed()) << failed_checks(fam.report);

    double surplus = 0;
    const MatrixXd& u = w.U.values();
    for (Index c = 0; c < cls.size(); ++c) {
      for (Index x = 0; x < cls.domain_size(); ++x) {
        const double wrong = u(c, labeled_column(x, -cls.value(c, x)));
        const double right = u(c, labeled_column(x, cls.value(c, x)));
        surplus += wrong - alpha * std::abs(right);
      }
    }
    EXPECT_NEAR((1 + alpha) * fam.Delta - 2 * alpha, 2 * surplus, 1e-12);
    for (const auto& m : fam.members) {
      EXPECT_EQ(population_loss(m.mu, cls.concept_vector(m.concept_index)), 0.0);
    }

    const RefinedRealizableFamily r = refine_realizable_family(fam);
    EXPECT_TRUE(r.report.all_passed()) << failed_checks(r.report);
    EXPECT_LE(r.gamma2_star_U_tilde, 2 * alpha * r.gamma2_star_U / ((1 + alpha) * fam.Delta) + 1e-4);

    const MixedFamily mixed = mix_sigma(restrict_above(fam, alpha));
    EXPECT_TRUE(mixed.report.all_passed()) << failed_checks(mixed.report);
    for (const auto& m : mixed.family.members) EXPECT_GT(bayes_error(m.lambda), alpha / 2);

    const ReweightResult rw = reweight_pi_hat(r.U_tilde, difference_rows(r.family));
    EXPECT_FALSE(rw.capped);
    EXPECT_LE(rw.norm, rw.bound + 1e-4);
  }
}

TEST(Reweight, SingleRowIsPointMass) {
  const IndexedMatrix row({"r"}, {"a", "b", "c"}, MatrixXd{{0.5, -0.25, 0.25}});
  const ReweightResult rw = reweight_pi_hat(row, row);
  EXPECT_NEAR(rw.pi_hat.weight(0), 1.0, 1e-12);
  EXPECT_NEAR(rw.norm, 1.0, 1e-6);
  EXPECT_NEAR(rw.bound, 4.0, 1e-4);
}

TEST(Reweight, CapReturnsUnchangedWeights) {
  const IndexedMatrix row = IndexedMatrix::unlabeled(MatrixXd::Constant(2, 5, 0.1));
  const ReweightResult rw = reweight_pi_hat(row, row, {}, 4);
  EXPECT_TRUE(rw.capped);
  EXPECT_NEAR(rw.pi_hat.weight(0), 0.5, 1e-12);
}

TEST(Diagnostics, KlAndDistinguishingHarness) {
  const ConceptClass cls = two_concepts();
  const AgnosticHardFamily fam = build_agnostic_family(cls, single_entry_witness(cls));
  const RefinedAgnosticFamily r = refine_agnostic_family(fam, 0.25);
  const AgnosticMember& m = r.family.members[0];
  TaskConfig config;
  config.alpha = 0.25;
  const AgnosticLearner learner(cls, config);
  const PrivacyParams params(1.0);

  const KlDiagnostic kl =
      kl_diagnostic({m.lambda}, {m.mu}, r.family.pi, 0.25, learner.randomizer(), params, 10);
  EXPECT_NEAR(kl.expected_kl, transcript_kl(m.lambda, m.mu, learner.randomizer(), params, 10), 1e-15);
  EXPECT_NEAR(kl.norm_bound, 10 * 0.0625, 1e-15);

  const DistinguishingReport rep = distinguishing_harness(learner, m.lambda, m.mu, 10, 400, 3);
  EXPECT_EQ(rep.trials, 400);
  EXPECT_NEAR(rep.pinsker_bound, std::sqrt(rep.transcript_kl / 2), 1e-15);
  EXPECT_LE(rep.empirical_tv, std::min(1.0, rep.pinsker_bound) + 0.1);
  const DistinguishingReport same = distinguishing_harness(learner, m.lambda, m.lambda, 10, 50, 3);
  EXPECT_EQ(same.transcript_kl, 0.0);
}

}  // namespace
}  // namespace ldpg
