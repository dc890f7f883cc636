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
#include <limits>
#include <random>

#include "ldpg/error.hpp"
#include "ldpg/ldp.hpp"
#include "ldpg/matrices.hpp"
#include "ldpg/testing/hooks.hpp"

namespace ldpg {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<std::string> points(Index n) {
  std::vector<std::string> out;
  for (Index i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

// d x 2|X| right factor with labeled columns and uniform random entries.
IndexedMatrix random_factor(Index d, Index domain, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd a(d, 2 * domain);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = u(rng);
  }
  std::vector<std::string> rows;
  for (Index i = 0; i < d; ++i) rows.push_back("v" + std::to_string(i));
  return IndexedMatrix(rows, labeled_column_labels(points(domain)), a);
}

LabeledDistribution random_distribution(Index domain, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Eigen::MatrixX2d p(domain, 2);
  for (Index i = 0; i < domain; ++i) p.row(i) << e(rng), e(rng);
  p /= p.sum();
  return LabeledDistribution(points(domain), p);
}

// Channel probability written out from the randomized-response definition:
// pick j uniformly, draw b = +1 w.p. (1 + a_j / m) / 2, flip w.p. 1 / (1 + e^eps).
VectorXd channel_oracle(const MatrixXd& a, Index column, double eps) {
  const double m = a.cwiseAbs().maxCoeff();
  const double flip = 1.0 / (1.0 + std::exp(eps));
  const Index d = a.rows();
  VectorXd p(2 * d);
  for (Index j = 0; j < d; ++j) {
    const double raw = 0.5 * (1.0 + a(j, column) / m);
    const double up = raw * (1.0 - flip) + (1.0 - raw) * flip;
    p(2 * j) = up / static_cast<double>(d);
    p(2 * j + 1) = (1.0 - up) / static_cast<double>(d);
  }
  return p;
}

TEST(Privacy, RejectsOutOfRangeEpsilon) {
  EXPECT_THROW(PrivacyParams(0.0), InvalidArgument);
  EXPECT_THROW(PrivacyParams(-1.0), InvalidArgument);
  EXPECT_THROW(PrivacyParams(8.5), InvalidArgument);
  EXPECT_NO_THROW(PrivacyParams(8.0));
  EXPECT_EQ(parse_randomizer_kind("coord-rr"), RandomizerKind::coord_rr);
  EXPECT_EQ(parse_randomizer_kind("laplace-l1"), RandomizerKind::laplace_l1);
  EXPECT_THROW(parse_randomizer_kind("gauss"), InvalidArgument);
}

TEST(CoordRr, ChannelMatchesDefinition) {
  for (double eps : {0.5, 1.0, 2.0}) {
    const IndexedMatrix a = random_factor(3, 2, 11);
    const RandomizerSpec spec(RandomizerKind::coord_rr, a);
    for (Index col = 0; col < a.cols(); ++col) {
      const VectorXd got = channel_of_column(spec, PrivacyParams(eps), col).probs;
      EXPECT_LE((got - channel_oracle(a.values(), col, eps)).cwiseAbs().maxCoeff(), 1e-15);
      EXPECT_NEAR(got.sum(), 1.0, 1e-15);
    }
  }
}

TEST(CoordRr, SingleEntryExample) {
  const IndexedMatrix a({"v0"}, labeled_column_labels({"x"}), MatrixXd{{1.0, -1.0}});
  const RandomizerSpec spec(RandomizerKind::coord_rr, a);
  const PrivacyParams params(std::log(3.0));
  EXPECT_NEAR(channel_of_column(spec, params, 0).probs(0), 0.75, 1e-15);
  EXPECT_NEAR(channel_of_column(spec, params, 1).probs(0), 0.25, 1e-15);
  EXPECT_NEAR(audit_privacy(spec, params).max_log_ratio, std::log(3.0), 1e-12);

  const int trials = 40000;
  int plus = 0;
  for (int t = 0; t < trials; ++t) plus += randomize(spec, "(x,+1)", params, t).bit > 0;
  const double se = std::sqrt(0.75 * 0.25 / trials);
  EXPECT_NEAR(plus / static_cast<double>(trials), 0.75, 5 * se);
}

TEST(CoordRr, ZeroEntryGivesFairBit) {
  const IndexedMatrix a({"v0", "v1"}, labeled_column_labels({"x"}), MatrixXd{{0.0, 1.0}, {1.0, 1.0}});
  const RandomizerSpec spec(RandomizerKind::coord_rr, a);
  const VectorXd p = channel_of_column(spec, PrivacyParams(1.0), 0).probs;
  EXPECT_NEAR(p(0), 0.25, 1e-15);
  EXPECT_NEAR(p(1), 0.25, 1e-15);
}

TEST(CoordRr, RandomizeIsDeterministicGivenSeed) {
  const RandomizerSpec spec(RandomizerKind::coord_rr, random_factor(5, 3, 2));
  const PrivacyParams params(1.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_EQ(randomize(spec, 2, params, s).symbol(), randomize(spec, 2, params, s).symbol());
  }
  EXPECT_THROW(randomize(spec, 6, params, 0), InvalidArgument);
  EXPECT_THROW(randomize(spec, "(y,+1)", params, 0), InvalidArgument);
}

TEST(CoordRr, DecodeIsExactlyUnbiased) {
  for (double eps : {0.5, 1.0, 2.0}) {
    const IndexedMatrix a = random_factor(3, 2, 7);
    const RandomizerSpec spec(RandomizerKind::coord_rr, a);
    const PrivacyParams params(eps);
    for (Index col = 0; col < a.cols(); ++col) {
      const VectorXd p = channel_oracle(a.values(), col, eps);
      VectorXd mean = VectorXd::Zero(a.rows());
      for (Index j = 0; j < a.rows(); ++j) {
        for (int bit : {1, -1}) {
          TranscriptMessage msg;
          msg.coordinate = j;
          msg.bit = bit;
          mean += p(msg.symbol()) * unbiased_decode(msg, spec, params);
        }
      }
      EXPECT_LE((mean - a.values().col(col)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(CoordRr, DecodedValuesFlipSign) {
  const RandomizerSpec spec(RandomizerKind::coord_rr, random_factor(4, 2, 3));
  const PrivacyParams params(1.0);
  TranscriptMessage up;
  up.coordinate = 2;
  TranscriptMessage down = up;
  down.bit = -1;
  const VectorXd a = unbiased_decode(up, spec, params);
  const VectorXd b = unbiased_decode(down, spec, params);
  EXPECT_LE((a + b).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(a(2), 4 * spec.m() / rr_retention(params), 1e-12);
  EXPECT_EQ((a.array() != 0).count(), 1);
}

TEST(CoordRr, AuditStaysWithinEpsilon) {
  for (double eps : {0.5, 1.0, 2.0}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const RandomizerSpec spec(RandomizerKind::coord_rr, random_factor(4, 3, 100 + s));
      const PrivacyAudit audit = audit_privacy(spec, PrivacyParams(eps));
      EXPECT_FALSE(audit.analytic);
      EXPECT_LE(audit.max_log_ratio, eps + 1e-9);
    }
  }
}

TEST(CoordRr, IdenticalColumnsLeakNothing) {
  const IndexedMatrix a({"v0", "v1"}, labeled_column_labels({"x"}), MatrixXd{{0.5, 0.5}, {-1.0, -1.0}});
  const RandomizerSpec spec(RandomizerKind::coord_rr, a);
  EXPECT_NEAR(audit_privacy(spec, PrivacyParams(2.0)).max_log_ratio, 0.0, 1e-15);
}

TEST(LaplaceL1, AuditIsAnalyticAndDecodeIsIdentity) {
  const RandomizerSpec spec(RandomizerKind::laplace_l1, random_factor(3, 2, 5));
  const PrivacyParams params(1.0);
  const PrivacyAudit audit = audit_privacy(spec, params);
  EXPECT_TRUE(audit.analytic);
  EXPECT_DOUBLE_EQ(audit.max_log_ratio, 1.0);
  const TranscriptMessage msg = randomize(spec, 1, params, 9);
  EXPECT_EQ(msg.vector.size(), 3);
  EXPECT_EQ(unbiased_decode(msg, spec, params), msg.vector);
  EXPECT_THROW(channel_of_column(spec, params, 0), InvalidArgument);

  const RandomizerSpec exact = testing::noise_free(spec);
  EXPECT_EQ(randomize(exact, 1, params, 9).vector, spec.A().values().col(1));
}

TEST(LaplaceL1, SensitivityIsLargestColumnGap) {
  const IndexedMatrix a({"v0", "v1"}, labeled_column_labels({"x"}), MatrixXd{{1.0, -0.5}, {0.25, 0.75}});
  const RandomizerSpec spec(RandomizerKind::laplace_l1, a);
  EXPECT_NEAR(spec.l1_sensitivity(), 2.0, 1e-15);
}

class Protocol : public ::testing::TestWithParam<RandomizerKind> {};

TEST_P(Protocol, NoiseFreeRunAnswersEmpiricalQueries) {
  const IndexedMatrix a = random_factor(3, 3, 21);
  const IndexedMatrix r = IndexedMatrix::unlabeled(MatrixXd::Random(2, 3));
  const Dataset data(points(3), {{0, 1}, {2, -1}, {2, -1}, {1, 1}});
  const RandomizerSpec spec = testing::noise_free(RandomizerSpec(GetParam(), a));
  const VectorXd got = run_protocol(data, r, spec, PrivacyParams(1.0), 4);
  const VectorXd want = r.values() * a.values() * data.empirical().flat();
  EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_P(Protocol, MatchesDecodedTranscript) {
  const IndexedMatrix a = random_factor(3, 3, 22);
  const IndexedMatrix r = IndexedMatrix::unlabeled(MatrixXd::Identity(3, 3));
  const Dataset data(points(3), {{0, 1}, {2, -1}, {1, -1}, {1, 1}, {0, -1}});
  const RandomizerSpec spec(GetParam(), a);
  const PrivacyParams params(1.0);
  const auto transcript = collect_transcript(data, spec, params, 8);
  ASSERT_EQ(transcript.size(), 5u);
  VectorXd mean = VectorXd::Zero(3);
  for (const auto& msg : transcript) mean += unbiased_decode(msg, spec, params);
  mean /= 5.0;
  EXPECT_LE((run_protocol(data, r, spec, params, 8) - mean).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_P(Protocol, MonteCarloMeanIsUnbiased) {
  const IndexedMatrix a = random_factor(2, 2, 23);
  const IndexedMatrix r = IndexedMatrix::unlabeled(MatrixXd::Identity(2, 2));
  const Dataset data(points(2), {{0, 1}, {1, -1}, {1, 1}});
  const RandomizerSpec spec(GetParam(), a);
  const VectorXd want = a.values() * data.empirical().flat();
  const int runs = 20000;
  VectorXd sum = VectorXd::Zero(2);
  VectorXd sq = VectorXd::Zero(2);
  for (int s = 0; s < runs; ++s) {
    const VectorXd v = run_protocol(data, r, spec, PrivacyParams(1.0), s);
    sum += v;
    sq += v.cwiseAbs2();
  }
  const VectorXd mean = sum / runs;
  const VectorXd se = ((sq / runs - mean.cwiseAbs2()) / runs).cwiseSqrt();
  for (Index k = 0; k < 2; ++k) EXPECT_NEAR(mean(k), want(k), 5 * se(k));
}

TEST_P(Protocol, RejectsEmptyAndMismatchedInput) {
  const RandomizerSpec spec(GetParam(), random_factor(2, 2, 24));
  const IndexedMatrix r = IndexedMatrix::unlabeled(MatrixXd::Identity(3, 3));
  const Dataset data(points(2), {{0, 1}});
  EXPECT_THROW(run_protocol(data, r, spec, PrivacyParams(1.0), 0), InvalidArgument);
  const IndexedMatrix r2 = IndexedMatrix::unlabeled(MatrixXd::Identity(2, 2));
  EXPECT_THROW(run_protocol(Dataset(points(2), {}), r2, spec, PrivacyParams(1.0), 0), InvalidArgument);
  EXPECT_THROW(run_protocol(Dataset({"q"}, {{0, 1}}), r2, spec, PrivacyParams(1.0), 0), InvalidArgument);
}

INSTANTIATE_TEST_SUITE_P(Kinds, Protocol,
                         ::testing::Values(RandomizerKind::coord_rr, RandomizerKind::laplace_l1),
                         [](const auto& info) {
                           return info.param == RandomizerKind::coord_rr ? "CoordRr" : "LaplaceL1";
                         });

TEST(Channel, MarginalOfPointMassIsColumnChannel) {
  const IndexedMatrix a = random_factor(3, 2, 30);
  const RandomizerSpec spec(RandomizerKind::coord_rr, a);
  const PrivacyParams params(1.0);
  const auto dist = LabeledDistribution::point_mass(points(2), 1, -1);
  const VectorXd got = channel_marginal(spec, params, dist).probs;
  EXPECT_LE((got - channel_oracle(a.values(), labeled_column(1, -1), 1.0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Channel, AntisymmetricFactorWithBalancedLabelsIsUniform) {
  MatrixXd a(2, 4);
  a << 1, -1, 0.5, -0.5, -0.25, 0.25, 1, -1;
  const RandomizerSpec spec(RandomizerKind::coord_rr,
                            IndexedMatrix({"v0", "v1"}, labeled_column_labels(points(2)), a));
  Eigen::MatrixX2d p(2, 2);
  p << 0.2, 0.2, 0.3, 0.3;
  const VectorXd got = channel_marginal(spec, PrivacyParams(2.0), LabeledDistribution(points(2), p)).probs;
  EXPECT_LE((got.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(Divergence, KlBasics) {
  const VectorXd p{{0.5, 0.5, 0.0}};
  const VectorXd q{{0.25, 0.25, 0.5}};
  EXPECT_NEAR(kl_divergence(p, q), std::log(2.0), 1e-15);
  EXPECT_EQ(kl_divergence(q, p), std::numeric_limits<double>::infinity());
  EXPECT_EQ(kl_divergence(p, p), 0.0);
}

TEST(Divergence, BinaryRandomizedResponseClosedForm) {
  const IndexedMatrix a({"v0"}, labeled_column_labels({"x"}), MatrixXd{{1.0, -1.0}});
  const RandomizerSpec spec(RandomizerKind::coord_rr, a);
  const auto plus = LabeledDistribution::point_mass({"x"}, 0, 1);
  const auto minus = LabeledDistribution::point_mass({"x"}, 0, -1);
  for (double eps : {0.25, 1.0, 3.0}) {
    const PrivacyParams params(eps);
    const double want = eps * std::tanh(eps / 2.0);
    EXPECT_NEAR(transcript_kl(plus, minus, spec, params, 1), want, 1e-12);
    EXPECT_NEAR(transcript_kl(plus, minus, spec, params, 7), 7 * want, 1e-11);
  }
  EXPECT_NEAR(transcript_kl(plus, minus, spec, PrivacyParams(1.0), 1), 0.462117, 1e-6);
}

TEST(Divergence, PinskerAndContractionOnRandomPairs) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    const double eps = 0.5 + 0.05 * t;
    const RandomizerSpec spec(RandomizerKind::coord_rr, random_factor(3, 3, 500 + t));
    const PrivacyParams params(eps);
    const auto lam = random_distribution(3, rng);
    const auto mu = random_distribution(3, rng);
    const double kl = transcript_kl(lam, mu, spec, params, 1);
    const double tv_out =
        tv_distance(channel_marginal(spec, params, lam), channel_marginal(spec, params, mu));
    const double tv_in = tv_distance(lam, mu);
    EXPECT_GE(kl + 1e-12, 2 * tv_out * tv_out);
    const double g = std::expm1(eps);
    EXPECT_LE(kl, 4 * g * g * 4 * tv_in * tv_in + 1e-12);
  }
}

TEST(Divergence, TotalVariationExamples) {
  const auto a = LabeledDistribution::point_mass(points(2), 0, 1);
  const auto b = LabeledDistribution::point_mass(points(2), 1, 1);
  EXPECT_DOUBLE_EQ(tv_distance(a, b), 1.0);
  EXPECT_DOUBLE_EQ(tv_distance(a, a), 0.0);
  EXPECT_NEAR(tv_distance(a, mix(a, b, 0.3)), 0.3, 1e-15);
  EXPECT_THROW(tv_distance(a, LabeledDistribution::point_mass(points(3), 0, 1)), InvalidArgument);
}

}  // namespace
}  // namespace ldpg
