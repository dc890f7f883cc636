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

#include "ldpg/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ldpg/concept_class.hpp"
#include "ldpg/error.hpp"
#include "ldpg/random.hpp"

namespace ldpg {

namespace {

constexpr double kMaxEpsilon = 8.0;

void require_coord_rr(const RandomizerSpec& spec, const char* what) {
  if (spec.kind() != RandomizerKind::coord_rr) {
    throw InvalidArgument(std::string(what) + " needs a discrete (coord-rr) randomizer");
  }
}

// Probability that coord-rr emits bit +1 for coordinate value `value`.
double plus_probability(double value, double m, double retention) {
  const double ratio = m > 0.0 ? std::clamp(value, -m, m) / m : 0.0;
  return 0.5 * (1.0 + ratio * retention);
}

double flip_probability(const PrivacyParams& params) {
  return 1.0 / (1.0 + std::exp(params.epsilon()));
}

// Standard Laplace draw by inverse CDF on u in (-1/2, 1/2).
double laplace(SplitMix64& rng) {
  double u = uniform01(rng) - 0.5;
  while (u == -0.5) u = uniform01(rng) - 0.5;
  return u < 0.0 ? std::log1p(2.0 * u) : -std::log1p(-2.0 * u);
}

// Allocation-free core shared by randomize and run_protocol. Adds the
// decoded message to `sum`.
void randomize_and_accumulate(const RandomizerSpec& spec, Index column, double retention,
                              double flip, double scale, std::uint64_t seed, Eigen::VectorXd& sum) {
  SplitMix64 rng(seed);
  const auto& a = spec.A().values();
  if (spec.kind() == RandomizerKind::coord_rr) {
    const Index d = spec.d();
    const Index j = std::min<Index>(d - 1, static_cast<Index>(uniform01(rng) * static_cast<double>(d)));
    const double p_up = plus_probability(a(j, column), spec.m(), 1.0);
    int bit = uniform01(rng) < p_up ? 1 : -1;
    if (uniform01(rng) < flip) bit = -bit;
    sum(j) += bit * static_cast<double>(d) * spec.m() / retention;
    return;
  }
  sum += a.col(column);
  for (Index k = 0; k < spec.d(); ++k) sum(k) += scale * laplace(rng);
}

}  // namespace

PrivacyParams::PrivacyParams(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= kMaxEpsilon)) {
    throw InvalidArgument("epsilon must lie in (0, 8], got " + std::to_string(epsilon));
  }
}

std::string to_string(RandomizerKind kind) {
  return kind == RandomizerKind::coord_rr ? "coord-rr" : "laplace-l1";
}

RandomizerKind parse_randomizer_kind(std::string_view name) {
  if (name == "coord-rr") return RandomizerKind::coord_rr;
  if (name == "laplace-l1") return RandomizerKind::laplace_l1;
  throw InvalidArgument("unknown randomizer '" + std::string(name) + "'");
}

RandomizerSpec::RandomizerSpec(RandomizerKind kind, IndexedMatrix A) : kind_(kind), A_(std::move(A)) {
  if (A_.rows() < 1 || A_.cols() < 1) throw InvalidArgument("randomizer needs a nonempty factor");
  const auto& a = A_.values();
  m_ = a.cwiseAbs().maxCoeff();
  for (Index i = 0; i < a.cols(); ++i) {
    for (Index j = i + 1; j < a.cols(); ++j) {
      l1_sensitivity_ = std::max(l1_sensitivity_, (a.col(i) - a.col(j)).cwiseAbs().sum());
    }
  }
}

Index RandomizerSpec::column_of(std::string_view label) const {
  const Index j = A_.col_index(label);
  if (j < 0) throw InvalidArgument("randomizer has no column '" + std::string(label) + "'");
  return j;
}

std::vector<Index> RandomizerSpec::record_columns(const std::vector<std::string>& domain) const {
  std::vector<Index> out(2 * domain.size());
  for (std::size_t x = 0; x < domain.size(); ++x) {
    out[static_cast<std::size_t>(labeled_column(static_cast<Index>(x), +1))] =
        column_of(labeled_point_label(domain[x], +1));
    out[static_cast<std::size_t>(labeled_column(static_cast<Index>(x), -1))] =
        column_of(labeled_point_label(domain[x], -1));
  }
  return out;
}

double rr_retention(const PrivacyParams& params) { return std::tanh(params.epsilon() / 2.0); }

TranscriptMessage randomize(const RandomizerSpec& spec, Index column, const PrivacyParams& params,
                            std::uint64_t seed) {
  if (column < 0 || column >= spec.A().cols()) throw InvalidArgument("randomizer column out of range");
  TranscriptMessage msg;
  SplitMix64 rng(seed);
  const auto& a = spec.A().values();
  if (spec.kind() == RandomizerKind::coord_rr) {
    const Index d = spec.d();
    msg.coordinate = std::min<Index>(d - 1, static_cast<Index>(uniform01(rng) * static_cast<double>(d)));
    const double p_up = plus_probability(a(msg.coordinate, column), spec.m(), 1.0);
    msg.bit = uniform01(rng) < p_up ? 1 : -1;
    if (uniform01(rng) < flip_probability(params)) msg.bit = -msg.bit;
    return msg;
  }
  msg.vector = a.col(column);
  if (!spec.noise_free()) {
    const double scale = spec.l1_sensitivity() / params.epsilon();
    for (Index k = 0; k < spec.d(); ++k) msg.vector(k) += scale * laplace(rng);
  }
  return msg;
}

TranscriptMessage randomize(const RandomizerSpec& spec, std::string_view column_label,
                            const PrivacyParams& params, std::uint64_t seed) {
  return randomize(spec, spec.column_of(column_label), params, seed);
}

Eigen::VectorXd unbiased_decode(const TranscriptMessage& msg, const RandomizerSpec& spec,
                                const PrivacyParams& params) {
  if (spec.kind() == RandomizerKind::laplace_l1) {
    if (msg.vector.size() != spec.d()) throw InvalidArgument("message length differs from d");
    return msg.vector;
  }
  if (msg.coordinate < 0 || msg.coordinate >= spec.d() || (msg.bit != 1 && msg.bit != -1)) {
    throw InvalidArgument("message does not belong to this randomizer");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(spec.d());
  out(msg.coordinate) = msg.bit * static_cast<double>(spec.d()) * spec.m() / rr_retention(params);
  return out;
}

std::vector<TranscriptMessage> collect_transcript(const Dataset& data, const RandomizerSpec& spec,
                                                  const PrivacyParams& params, std::uint64_t seed) {
  const std::vector<Index> columns = spec.record_columns(data.domain());
  std::vector<TranscriptMessage> out;
  out.reserve(static_cast<std::size_t>(data.size()));
  for (Index i = 0; i < data.size(); ++i) {
    const auto& r = data.records()[static_cast<std::size_t>(i)];
    out.push_back(randomize(spec, columns[static_cast<std::size_t>(labeled_column(r.point, r.label))], params,
                            derive_seed(seed, static_cast<std::uint64_t>(i))));
  }
  return out;
}

Eigen::VectorXd run_protocol(const Dataset& data, const IndexedMatrix& R, const RandomizerSpec& spec,
                             const PrivacyParams& params, std::uint64_t seed) {
  if (R.cols() != spec.d()) {
    throw DomainMismatch("R has " + std::to_string(R.cols()) + " columns, A has " +
                         std::to_string(spec.d()) + " rows");
  }
  if (data.size() == 0) throw InvalidArgument("run_protocol needs at least one record");
  const std::vector<Index> columns = spec.record_columns(data.domain());
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(spec.d());
  if (spec.noise_free()) {
    for (const auto& r : data.records()) {
      sum += spec.A().values().col(columns[static_cast<std::size_t>(labeled_column(r.point, r.label))]);
    }
  } else {
    const double retention = rr_retention(params);
    const double flip = flip_probability(params);
    const double scale = spec.l1_sensitivity() / params.epsilon();
    for (Index i = 0; i < data.size(); ++i) {
      const auto& r = data.records()[static_cast<std::size_t>(i)];
      randomize_and_accumulate(spec, columns[static_cast<std::size_t>(labeled_column(r.point, r.label))],
                               retention, flip, scale, derive_seed(seed, static_cast<std::uint64_t>(i)), sum);
    }
  }
  return R.values() * (sum / static_cast<double>(data.size()));
}

ChannelDistribution channel_of_column(const RandomizerSpec& spec, const PrivacyParams& params,
                                      Index column) {
  require_coord_rr(spec, "channel_of_column");
  const double retention = rr_retention(params);
  const Index d = spec.d();
  ChannelDistribution out;
  out.probs.resize(2 * d);
  for (Index j = 0; j < d; ++j) {
    const double up = plus_probability(spec.A()(j, column), spec.m(), retention);
    out.probs(2 * j) = up / static_cast<double>(d);
    out.probs(2 * j + 1) = (1.0 - up) / static_cast<double>(d);
  }
  return out;
}

PrivacyAudit audit_privacy(const RandomizerSpec& spec, const PrivacyParams& params) {
  PrivacyAudit out;
  if (spec.kind() == RandomizerKind::laplace_l1) {
    out.max_log_ratio = params.epsilon();
    out.analytic = true;
    return out;
  }
  Eigen::VectorXd hi = Eigen::VectorXd::Zero(spec.symbol_count());
  Eigen::VectorXd lo =
      Eigen::VectorXd::Constant(spec.symbol_count(), std::numeric_limits<double>::infinity());
  for (Index col = 0; col < spec.A().cols(); ++col) {
    const Eigen::VectorXd p = channel_of_column(spec, params, col).probs;
    hi = hi.cwiseMax(p);
    lo = lo.cwiseMin(p);
  }
  for (Index k = 0; k < hi.size(); ++k) {
    out.max_log_ratio = std::max(out.max_log_ratio, std::log(hi(k)) - std::log(lo(k)));
  }
  return out;
}

ChannelDistribution channel_marginal(const RandomizerSpec& spec, const PrivacyParams& params,
                                     const LabeledDistribution& dist) {
  require_coord_rr(spec, "channel_marginal");
  const std::vector<Index> columns = spec.record_columns(dist.domain());
  const Eigen::VectorXd flat = dist.flat();
  ChannelDistribution out;
  out.probs = Eigen::VectorXd::Zero(spec.symbol_count());
  for (Index cell = 0; cell < flat.size(); ++cell) {
    if (flat(cell) == 0.0) continue;
    out.probs += flat(cell) * channel_of_column(spec, params, columns[static_cast<std::size_t>(cell)]).probs;
  }
  return out;
}

double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw DomainMismatch("KL between distributions of different sizes");
  double acc = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) == 0.0) continue;
    if (q(i) == 0.0) return std::numeric_limits<double>::infinity();
    acc += p(i) * std::log(p(i) / q(i));
  }
  return std::max(0.0, acc);
}

double transcript_kl(const LabeledDistribution& a, const LabeledDistribution& b,
                     const RandomizerSpec& spec, const PrivacyParams& params, Index n) {
  if (n < 1) throw InvalidArgument("transcript_kl needs n >= 1");
  if (a.domain() != b.domain()) throw DomainMismatch("distributions over different domains");
  const double per_user = kl_divergence(channel_marginal(spec, params, a).probs,
                                        channel_marginal(spec, params, b).probs);
  return static_cast<double>(n) * per_user;
}

double tv_distance(const ChannelDistribution& p, const ChannelDistribution& q) {
  if (p.probs.size() != q.probs.size()) throw DomainMismatch("channels over different symbol sets");
  return 0.5 * (p.probs - q.probs).cwiseAbs().sum();
}

double tv_distance(const LabeledDistribution& p, const LabeledDistribution& q) {
  if (p.domain() != q.domain()) throw DomainMismatch("distributions over different domains");
  return 0.5 * (p.probs() - q.probs()).cwiseAbs().sum();
}

}  // namespace ldpg
