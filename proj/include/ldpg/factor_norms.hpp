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

#ifndef LDPG_FACTOR_NORMS_HPP_
#define LDPG_FACTOR_NORMS_HPP_

#include <Eigen/Dense>

#include <cstdint>

#include "ldpg/concept_class.hpp"
#include "ldpg/indexed_matrix.hpp"

namespace ldpg {

struct SdpSettings {
  double tolerance = 1e-6;  // certified duality gap, absolute below 1, relative above
  int max_iterations = 100;
  std::uint64_t seed = 0;  // the interior-point solver is deterministic; kept for API stability
};

/// Largest block matrix the dense solver accepts.
inline constexpr Index kMaxBlockSize = 256;

/// Solver-independent bounds bracketing the optimum. `upper` comes from an
/// explicit feasible factorization, `lower` from an explicit dual point.
struct Certificate {
  double upper = 0;
  double lower = 0;
  double gap = 0;
  int iterations = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
  double eigenvalue_shift = 0;  // diagonal shift that made the projected primal psd
};

/// R A = M_tilde with ||R||_{2->inf} = ||A||_{1->2}.
struct Factorization {
  IndexedMatrix R;
  IndexedMatrix A;
  IndexedMatrix M_tilde;
  double residual_inf = 0;  // ||M_tilde - M||_{1->inf}
  double gamma2_value = 0;  // ||R||_{2->inf} ||A||_{1->2}
};

struct Gamma2Result {
  double value = 0;
  Factorization factorization;
  Certificate certificate;
};

struct Gamma2DualResult {
  double value = 0;
  Eigen::MatrixXd f;  // one vector per row of U, norms <= 1
  Eigen::MatrixXd g;  // one vector per column of U
  Certificate certificate;
};

struct DualWitness {
  IndexedMatrix U;
  double objective = 0;
  double gamma2_star = 0;    // certified upper bound on gamma2*(U)
  double inner_product = 0;  // D . U, or the wrong-label mass for eta witnesses
  Certificate certificate;
};

struct EtaSolution {
  IndexedMatrix W;  // in K_C
  Eigen::VectorXd theta;
  IndexedMatrix W_tilde;  // W + theta 1^T
  double value = 0;
  Factorization factorization;  // of W_tilde
  Certificate certificate;
};

/// Balances R and A so that ||R||_{2->inf} = ||A||_{1->2}; returns the product
/// of the two norms.
double balance_factors(Eigen::MatrixXd& R, Eigen::MatrixXd& A);

/// Drops factor directions whose energy is below `relative_cutoff` times the
/// largest one. Interior-point solutions have full rank, while the optimal
/// face usually has a much smaller one; fewer directions mean lower variance
/// in protocols that sample a coordinate. M_tilde and residual_inf are
/// recomputed against `target`.
Factorization truncate_factorization(const Factorization& f, const IndexedMatrix& target,
                                     double relative_cutoff = 1e-7);

/// gamma_2(M) = min over R A = M of ||R||_{2->inf} ||A||_{1->2}.
Gamma2Result gamma2(const IndexedMatrix& M, const SdpSettings& settings = {});

/// min gamma_2(M_tilde) over ||M_tilde - M||_{1->inf} <= alpha.
Gamma2Result gamma2_approx(const IndexedMatrix& M, double alpha, const SdpSettings& settings = {});

/// gamma_2*(U) = max sum_ij u_ij <f_i, g_j> over vectors in the unit ball.
Gamma2DualResult gamma2_dual(const IndexedMatrix& U, const SdpSettings& settings = {});

/// Certified upper bound on gamma_2*(U) from y with Diag(y) >= [[0,U],[U^T,0]]/2;
/// adds the uniform diagonal shift needed when that fails.
double gamma2_dual_bound(const Eigen::MatrixXd& U, const Eigen::VectorXd& y);

/// U maximizing (D . U - alpha ||U||_1) / gamma_2*(U), normalized to
/// ||U||_1 = 1 with every row oriented so that its contribution to D . U is
/// nonnegative. Throws InvalidArgument when gamma_2(D, alpha) = 0.
DualWitness agnostic_dual_witness(const IndexedMatrix& D, double alpha,
                                  const SdpSettings& settings = {});

/// eta(C, alpha) = min gamma_2(W + theta 1^T) over W in K_C: entries at
/// (c, (x, c(x))) lie in [-alpha, alpha], entries at (c, (x, -c(x))) are >= 1.
EtaSolution eta(const ConceptClass& cls, double alpha, const SdpSettings& settings = {});

/// U in S_C (rows sum to zero, wrong-label entries nonnegative), l1-normalized,
/// maximizing (sum of wrong-label entries - alpha sum |correct-label entries|)
/// / gamma_2*(U).
DualWitness eta_dual_witness(const ConceptClass& cls, double alpha,
                             const SdpSettings& settings = {});

/// True when U has rows summing to zero and nonnegative wrong-label entries,
/// both within `tol`.
bool in_eta_dual_set(const ConceptClass& cls, const Eigen::MatrixXd& U, double tol = 1e-10);

}  // namespace ldpg

#endif  // LDPG_FACTOR_NORMS_HPP_
