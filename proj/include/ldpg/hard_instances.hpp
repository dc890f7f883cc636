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

#ifndef LDPG_HARD_INSTANCES_HPP_
#define LDPG_HARD_INSTANCES_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "ldpg/concept_class.hpp"
#include "ldpg/distribution.hpp"
#include "ldpg/factor_norms.hpp"
#include "ldpg/indexed_matrix.hpp"
#include "ldpg/learners.hpp"
#include "ldpg/ldp.hpp"
#include "ldpg/norms.hpp"

namespace ldpg {

/// Exact identities are checked to this accuracy.
inline constexpr double kIdentityTolerance = 1e-12;
/// Slack for comparisons between certified SDP values.
inline constexpr double kCertifiedTolerance = 1e-4;

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double measured = 0;
  double bound = 0;
};

struct VerificationReport {
  std::vector<PropertyCheck> checks;

  bool all_passed() const;
  /// Records `measured <= bound`.
  void expect_at_most(std::string name, double measured, double bound);
  /// Records `measured > bound`.
  void expect_greater(std::string name, double measured, double bound);
  /// Records a value without asserting anything.
  void record(std::string name, double measured);
};

struct BinningResult {
  std::vector<Index> selected;  // S
  double score = 0;             // pi(S) min_{v in S} a_v
  double bin_floor_value = 0;   // pi(S) 2^-(j+1), what the bin was chosen by
  double guarantee = 0;         // (sum_v pi(v) a_v - beta) / (2 levels)
  double mass = 0;              // pi(S)
  int bin = 0;                  // j
  int levels = 0;               // ceil(log2(1 / beta))
  double cutoff = 0;            // beta
};

/// Discards a_v <= beta, sorts the rest into the dyadic bins
/// (2^-(j+1), 2^-j], j < ceil(log2(1/beta)), and keeps the bin maximizing
/// pi(B_j) 2^-(j+1) (ties to the smallest j).
BinningResult geometric_binning(const Eigen::VectorXd& a, const Eigen::VectorXd& pi, double beta);
BinningResult geometric_binning(const Eigen::VectorXd& a, const WeightedIndex& pi, double beta);

struct AgnosticMember {
  Index first = 0;   // c
  Index second = 0;  // c'
  double weight = 0;
  LabeledDistribution lambda;
  LabeledDistribution mu;
  double loss_gap = 0;  // loss_lambda(c') - loss_lambda(c)
};

/// One (lambda, mu) pair per supported row (c, c') of the witness.
struct AgnosticHardFamily {
  ConceptClass cls;
  WeightedIndex pi;  // over pair labels
  std::vector<AgnosticMember> members;
  IndexedMatrix U;
  double inner_product = 0;  // D . U
  VerificationReport report{};
};

struct RefinedAgnosticFamily {
  AgnosticHardFamily family;  // pi~, lambda~ = lambda, mu~
  IndexedMatrix U_tilde{};
  double alpha = 0;
  double tau = 0;
  BinningResult binning{};
  double gamma2_star_U = 0;
  double gamma2_star_U_tilde = 0;
  double min_property2 = 0;  // min over S of loss_mu~(c') - loss_mu~(c)
  double min_cross_optimality = 0;
  VerificationReport report{};
};

/// lambda, mu from the positive and negative parts of each witness row.
AgnosticHardFamily build_agnostic_family(const ConceptClass& cls, const DualWitness& witness);

RefinedAgnosticFamily refine_agnostic_family(const AgnosticHardFamily& family, double alpha,
                                             const SdpSettings& settings = {});

/// min over all hypotheses h of the summed excess losses of h on lambda and
/// on mu, each against the best concept of `cls`.
double cross_optimality_gap(const LabeledDistribution& lambda, const LabeledDistribution& mu,
                            const ConceptClass& cls);

struct RealizableMember {
  Index concept_index = 0;
  double weight = 0;
  LabeledDistribution lambda;
  LabeledDistribution mu;
  double loss = 0;  // loss_lambda(c)
};

struct RealizableHardFamily {
  ConceptClass cls;
  WeightedIndex pi;  // over concept names
  std::vector<RealizableMember> members;
  IndexedMatrix U;
  double Delta = 0;
  double alpha = 0;
  VerificationReport report{};
};

struct RefinedRealizableFamily {
  RealizableHardFamily family;  // pi~, lambda~, mu~ = mu
  IndexedMatrix U_tilde{};  // pi~ (lambda~ - mu~)
  double tau = 0;
  BinningResult binning{};
  double gamma2_star_U = 0;  // of pi (lambda - mu), twice the normalized witness
  double gamma2_star_U_tilde = 0;
  double level = 0;  // every loss_lambda~(c) exceeds this
  VerificationReport report{};
};

/// lambda_c = 2 U+_c / pi(c), mu_c = 2 U-_c / pi(c). Throws
/// VerificationError when Delta <= 2 alpha / (1 + alpha).
RealizableHardFamily build_realizable_family(const ConceptClass& cls, const DualWitness& witness,
                                             double alpha);

RefinedRealizableFamily refine_realizable_family(const RealizableHardFamily& family,
                                                 const SdpSettings& settings = {});

struct MixedFamily {
  RealizableHardFamily family;  // lambda^, mu^
  double level = 0;
  VerificationReport report{};
};

/// lambda^ = (lambda + sigma) / 2, mu^ = (mu + sigma) / 2 with sigma_c the
/// marginal of lambda_c labeled by c. Needs loss_lambda_c(c) > level for
/// every member; afterwards every hypothesis loses more than level / 2 on
/// each lambda^.
MixedFamily mix_sigma(const RealizableHardFamily& family, double level);
MixedFamily mix_sigma(const RealizableHardFamily& family);  // level = alpha

/// Members whose loss_lambda_c(c) exceeds `level`, with pi renormalized.
/// Throws VerificationError when none does.
RealizableHardFamily restrict_above(const RealizableHardFamily& family, double level);

/// Rows (lambda_v - mu_v) over the columns of the family's witness: X for
/// agnostic families, X x {+-1} for realizable ones.
IndexedMatrix difference_rows(const AgnosticHardFamily& family);
IndexedMatrix difference_rows(const RealizableHardFamily& family);

struct ReweightResult {
  WeightedIndex pi_hat;
  double norm = 0;   // ||M||_{inf -> L2(pi_hat)}
  double bound = 0;  // 4 gamma_2*(U~)
  bool capped = false;  // column cap exceeded, pi~ returned unchanged
  int cuts = 0;
};

/// Minimizes ||M||_{inf -> L2(pi_hat)} over pi_hat supported on the nonzero
/// rows of U~ by cutting planes over sign vertices.
ReweightResult reweight_pi_hat(const IndexedMatrix& U_tilde, const IndexedMatrix& M,
                               const SdpSettings& settings = {},
                               int column_cap = kDefaultBruteForceCap);

struct KlDiagnostic {
  double expected_kl = 0;  // E_{v ~ pi} transcript KL of (lambda_v, mu_v)
  double norm_bound = 0;   // n eps^2 ||M||^2_{inf -> L2(pi)}
  double ratio = 0;
};

KlDiagnostic kl_diagnostic(const std::vector<LabeledDistribution>& lambdas,
                           const std::vector<LabeledDistribution>& mus, const WeightedIndex& pi,
                           double operator_norm, const RandomizerSpec& spec,
                           const PrivacyParams& params, Index n);

struct DistinguishingReport {
  double empirical_tv = 0;  // between the learner's output distributions
  double transcript_kl = 0;
  double pinsker_bound = 0;  // sqrt(KL / 2) >= TV of the transcripts
  Index trials = 0;
};

/// Runs the learner on fresh samples from lambda and from mu and compares
/// the two output distributions.
DistinguishingReport distinguishing_harness(const AgnosticLearner& learner,
                                            const LabeledDistribution& lambda,
                                            const LabeledDistribution& mu, Index n, Index trials,
                                            std::uint64_t seed);

}  // namespace ldpg

#endif  // LDPG_HARD_INSTANCES_HPP_
