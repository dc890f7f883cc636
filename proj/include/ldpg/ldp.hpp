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

#ifndef LDPG_LDP_HPP_
#define LDPG_LDP_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ldpg/distribution.hpp"
#include "ldpg/indexed_matrix.hpp"

namespace ldpg {

namespace testing {
class HookAccess;
}

/// Privacy level; epsilon in (0, 8], the range the exact audit handles.
class PrivacyParams {
 public:
  explicit PrivacyParams(double epsilon);
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

enum class RandomizerKind {
  coord_rr,    // one coordinate, one randomized bit
  laplace_l1,  // full vector plus Laplace noise
};

std::string to_string(RandomizerKind kind);
/// Accepts "coord-rr" and "laplace-l1".
RandomizerKind parse_randomizer_kind(std::string_view name);

/// Local randomizer over the columns of the right factor A. Column labels of A
/// name the records they encode, e.g. "(x,+1)".
class RandomizerSpec {
 public:
  RandomizerSpec(RandomizerKind kind, IndexedMatrix A);

  RandomizerKind kind() const { return kind_; }
  const IndexedMatrix& A() const { return A_; }
  double m() const { return m_; }          // ||A||_{1->inf}
  Index d() const { return A_.rows(); }
  double l1_sensitivity() const { return l1_sensitivity_; }
  /// Number of distinct coord-rr messages, 2d.
  Index symbol_count() const { return 2 * d(); }

  /// Column of A encoding the record, throws InvalidArgument if absent.
  Index column_of(std::string_view label) const;
  /// Column per (point, label) of `domain` in the interleaved layout.
  std::vector<Index> record_columns(const std::vector<std::string>& domain) const;

  bool noise_free() const { return noise_free_; }

 private:
  friend class testing::HookAccess;

  RandomizerKind kind_;
  IndexedMatrix A_;
  double m_ = 0;
  double l1_sensitivity_ = 0;
  bool noise_free_ = false;
};

/// coord-rr: (coordinate, bit); laplace-l1: a real vector of length d.
struct TranscriptMessage {
  Index coordinate = 0;
  int bit = 1;
  Eigen::VectorXd vector;

  /// coord-rr symbol 2 j + (b == +1 ? 0 : 1).
  Index symbol() const { return 2 * coordinate + (bit > 0 ? 0 : 1); }
};

/// Probability of each coord-rr symbol.
struct ChannelDistribution {
  Eigen::VectorXd probs;
};

/// (e^eps - 1) / (e^eps + 1): the bias retained by the randomized bit.
double rr_retention(const PrivacyParams& params);

TranscriptMessage randomize(const RandomizerSpec& spec, Index column, const PrivacyParams& params,
                            std::uint64_t seed);
TranscriptMessage randomize(const RandomizerSpec& spec, std::string_view column_label,
                            const PrivacyParams& params, std::uint64_t seed);

/// Unbiased estimate of the encoded column.
Eigen::VectorXd unbiased_decode(const TranscriptMessage& msg, const RandomizerSpec& spec,
                                const PrivacyParams& params);

/// One message per record, record i randomized with derive_seed(seed, i).
std::vector<TranscriptMessage> collect_transcript(const Dataset& data, const RandomizerSpec& spec,
                                                  const PrivacyParams& params, std::uint64_t seed);

/// R times the mean decoded vector: an unbiased estimate of R A applied to
/// the empirical distribution of `data`. Equal to decoding collect_transcript.
Eigen::VectorXd run_protocol(const Dataset& data, const IndexedMatrix& R, const RandomizerSpec& spec,
                             const PrivacyParams& params, std::uint64_t seed);

struct PrivacyAudit {
  double max_log_ratio = 0;
  bool analytic = false;  // true for laplace-l1: certificate, not enumeration
};

/// Max over symbols and input column pairs of |log(p / p')|.
PrivacyAudit audit_privacy(const RandomizerSpec& spec, const PrivacyParams& params);

/// Output distribution of coord-rr on a single column.
ChannelDistribution channel_of_column(const RandomizerSpec& spec, const PrivacyParams& params,
                                      Index column);

/// Per-user output distribution when the record is drawn from `dist`.
ChannelDistribution channel_marginal(const RandomizerSpec& spec, const PrivacyParams& params,
                                     const LabeledDistribution& dist);

/// KL(p || q) with 0 log 0 = 0; +inf when p puts mass where q has none.
double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// n KL(channel_marginal(a) || channel_marginal(b)), the KL between the
/// transcripts of n i.i.d. users.
double transcript_kl(const LabeledDistribution& a, const LabeledDistribution& b,
                     const RandomizerSpec& spec, const PrivacyParams& params, Index n);

double tv_distance(const ChannelDistribution& p, const ChannelDistribution& q);
double tv_distance(const LabeledDistribution& p, const LabeledDistribution& q);

}  // namespace ldpg

#endif  // LDPG_LDP_HPP_
