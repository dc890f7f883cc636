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

#include "ldpg/norms.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "ldpg/error.hpp"
#include "ldpg/random.hpp"

namespace ldpg {

namespace {

// Rows of sqrt(w) * M for rows with positive weight; the objective is then
// ||B f||^2.
Eigen::MatrixXd weighted_rows(const Eigen::MatrixXd& m, const Eigen::VectorXd& w) {
  std::vector<Index> keep;
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) > 0.0) keep.push_back(i);
  }
  Eigen::MatrixXd b(static_cast<Index>(keep.size()), m.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    b.row(static_cast<Index>(r)) = std::sqrt(w(keep[r])) * m.row(keep[r]);
  }
  return b;
}

InfToL2Result enumerate_vertices(const Eigen::MatrixXd& b) {
  const Index cols = b.cols();
  Eigen::VectorXd f = Eigen::VectorXd::Ones(cols);
  Eigen::VectorXd v = b * f;
  double best = v.squaredNorm();
  Eigen::VectorXd best_f = f;
  // f and -f give the same value, so the first coordinate stays +1.
  const std::uint64_t steps = cols > 1 ? (std::uint64_t{1} << (cols - 1)) : 1;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const Index j = 1 + static_cast<Index>(std::countr_zero(k));
    v.noalias() -= (2.0 * f(j)) * b.col(j);
    f(j) = -f(j);
    const double value = v.squaredNorm();
    if (value > best) {
      best = value;
      best_f = f;
    }
  }
  InfToL2Result out;
  out.value = std::sqrt((b * best_f).squaredNorm());
  out.maximizer = std::move(best_f);
  out.exact = true;
  return out;
}

InfToL2Result sampled_ascent(const Eigen::MatrixXd& b, int samples, std::uint64_t seed) {
  const Index cols = b.cols();
  SplitMix64 rng(seed);
  InfToL2Result out;
  out.exact = false;
  out.maximizer = Eigen::VectorXd::Ones(cols);
  double best = -1.0;
  Eigen::VectorXd f(cols);
  for (int s = 0; s < samples; ++s) {
    for (Index j = 0; j < cols; ++j) f(j) = (rng() >> 63) != 0 ? 1.0 : -1.0;
    Eigen::VectorXd v = b * f;
    double value = v.squaredNorm();
    bool improved = true;
    while (improved) {
      improved = false;
      for (Index j = 0; j < cols; ++j) {
        // ||v - 2 f_j b_j||^2 - ||v||^2
        const double gain = -4.0 * f(j) * b.col(j).dot(v) + 4.0 * b.col(j).squaredNorm();
        if (gain > 1e-12 * (1.0 + value)) {
          v.noalias() -= (2.0 * f(j)) * b.col(j);
          f(j) = -f(j);
          value = v.squaredNorm();
          improved = true;
        }
      }
    }
    if (value > best) {
      best = value;
      out.maximizer = f;
    }
  }
  out.value = std::sqrt((b * out.maximizer).squaredNorm());
  return out;
}

}  // namespace

InfToL2Result inf_to_l2(const Eigen::MatrixXd& m, const Eigen::VectorXd& weights,
                        const InfToL2Options& options) {
  if (weights.size() != m.rows()) {
    throw DomainMismatch("weights have " + std::to_string(weights.size()) + " entries for " +
                         std::to_string(m.rows()) + " rows");
  }
  if ((weights.array() < 0.0).any() || !weights.allFinite()) {
    throw InvalidArgument("row weights must be finite and nonnegative");
  }
  if (m.cols() == 0) return {0.0, Eigen::VectorXd(), true};
  const Eigen::MatrixXd b = weighted_rows(m, weights);
  if (options.method == NormMethod::exact) {
    if (m.cols() > options.column_cap) {
      throw InvalidArgument("exact inf->L2 norm needs 2^" + std::to_string(m.cols() - 1) +
                            " evaluations, above the column cap " +
                            std::to_string(options.column_cap) + "; use the sampled method");
    }
    return enumerate_vertices(b);
  }
  if (options.samples < 1) throw InvalidArgument("sampled inf->L2 norm needs at least one sample");
  return sampled_ascent(b, options.samples, options.seed);
}

double operator_norm_inf_to_l2(const IndexedMatrix& m, const WeightedIndex& pi,
                               const InfToL2Options& options) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m.rows());
  for (Index i = 0; i < pi.size(); ++i) {
    const Index row = m.row_index(pi.support()[static_cast<std::size_t>(i)]);
    if (row < 0) {
      if (pi.weight(i) > 0.0) {
        throw DomainMismatch("weight on '" + pi.support()[static_cast<std::size_t>(i)] +
                             "', which is not a row label");
      }
      continue;
    }
    w(row) = pi.weight(i);
  }
  return inf_to_l2(m.values(), w, options).value;
}

}  // namespace ldpg
