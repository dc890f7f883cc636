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

#ifndef LDPG_NORMS_HPP_
#define LDPG_NORMS_HPP_

#include <Eigen/Dense>

#include <cstdint>

#include "ldpg/distribution.hpp"
#include "ldpg/indexed_matrix.hpp"

namespace ldpg {

template <typename Scalar>
struct ElementaryNorms {
  Scalar one_to_inf = 0;  // largest entry magnitude
  Scalar one_to_two = 0;  // largest column l2 norm
  Scalar two_to_inf = 0;  // largest row l2 norm
};

template <typename Derived>
ElementaryNorms<typename Derived::Scalar> elementary_norms(const Eigen::MatrixBase<Derived>& m) {
  ElementaryNorms<typename Derived::Scalar> out;
  if (m.size() == 0) return out;
  out.one_to_inf = m.cwiseAbs().maxCoeff();
  out.one_to_two = m.colwise().norm().maxCoeff();
  out.two_to_inf = m.rowwise().norm().maxCoeff();
  return out;
}

inline ElementaryNorms<double> elementary_norms(const IndexedMatrix& m) {
  return elementary_norms(m.values());
}

/// ||A||_{1->inf}: the largest entry magnitude.
template <typename Derived>
typename Derived::Scalar max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::Scalar(0) : m.cwiseAbs().maxCoeff();
}

/// Frobenius inner product M . N = tr(M^T N).
template <typename A, typename B>
typename A::Scalar frobenius_dot(const Eigen::MatrixBase<A>& m, const Eigen::MatrixBase<B>& n) {
  return m.cwiseProduct(n).sum();
}

/// Entrywise l1 norm ||U||_1.
template <typename Derived>
typename Derived::Scalar entrywise_l1(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().sum();
}

inline constexpr int kDefaultBruteForceCap = 22;

enum class NormMethod {
  exact,    // enumerate every sign vertex; refuses above the column cap
  sampled,  // random vertices + single-flip ascent; a lower bound
};

struct InfToL2Options {
  NormMethod method = NormMethod::exact;
  int column_cap = kDefaultBruteForceCap;
  int samples = 256;
  std::uint64_t seed = 0;
};

struct InfToL2Result {
  double value = 0;
  Eigen::VectorXd maximizer;  // sign vertex f attaining value
  bool exact = true;
};

/// max over f in {+-1}^cols of sqrt(sum_v w_v (M f)_v^2).
///
/// The squared objective is convex in f, so its maximum over the l_inf ball
/// sits at a vertex and enumeration is exact.
InfToL2Result inf_to_l2(const Eigen::MatrixXd& m, const Eigen::VectorXd& weights,
                        const InfToL2Options& options = {});

/// ||M||_{l_inf -> L2(pi)}; pi is matched to rows by label, unlisted rows get
/// weight 0.
double operator_norm_inf_to_l2(const IndexedMatrix& m, const WeightedIndex& pi,
                               const InfToL2Options& options = {});

}  // namespace ldpg

#endif  // LDPG_NORMS_HPP_
