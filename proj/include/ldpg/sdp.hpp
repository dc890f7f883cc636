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

#ifndef LDPG_SDP_HPP_
#define LDPG_SDP_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace ldpg::sdp {

using Index = Eigen::Index;

/// Entry (p, q) of a symmetric coefficient matrix; for p != q the value is
/// placed at both (p, q) and (q, p).
template <typename Scalar>
struct SymEntry {
  Index p;
  Index q;
  Scalar value;
};

template <typename Scalar>
struct LpEntry {
  Index k;
  Scalar value;
};

/// <A_i, X> + a_i^T x = rhs.
template <typename Scalar>
struct Constraint {
  std::vector<SymEntry<Scalar>> sdp;
  std::vector<LpEntry<Scalar>> lp;
  Scalar rhs = 0;
};

/// min <C, X> + c^T x  s.t.  <A_i, X> + a_i^T x = b_i,  X psd,  0 <= x <= ub.
///
/// The dual is max b^T y - ub^T w  s.t.  S = C - sum y_i A_i psd and
/// s = c - sum y_i a_i + w >= 0 with w >= 0 (w = 0 for unbounded variables).
template <typename Scalar>
struct Problem {
  Index block_size = 0;
  Index lp_size = 0;
  std::vector<SymEntry<Scalar>> objective_sdp;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> objective_lp;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lp_upper;
  std::vector<Constraint<Scalar>> constraints;

  Index add_lp_variable(Scalar cost = 0,
                        Scalar upper = std::numeric_limits<Scalar>::infinity()) {
    objective_lp.conservativeResize(lp_size + 1);
    lp_upper.conservativeResize(lp_size + 1);
    objective_lp(lp_size) = cost;
    lp_upper(lp_size) = upper;
    return lp_size++;
  }
};

template <typename Scalar>
struct Settings {
  Scalar tolerance = Scalar(1e-10);
  int max_iterations = 100;
};

/// The best iterate seen, measured by the largest of the three residuals.
template <typename Scalar>
struct Solution {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Mat X, S;
  Vec x, s, y;
  Vec v, w;  // upper-bound slacks and their duals
  Scalar primal_objective = 0;
  Scalar dual_objective = 0;
  Scalar relative_gap = std::numeric_limits<Scalar>::infinity();
  Scalar primal_infeasibility = std::numeric_limits<Scalar>::infinity();
  Scalar dual_infeasibility = std::numeric_limits<Scalar>::infinity();
  int iterations = 0;
  bool converged = false;
};

namespace detail {

template <typename Scalar>
std::vector<SymEntry<Scalar>> expand(const std::vector<SymEntry<Scalar>>& entries) {
  std::vector<SymEntry<Scalar>> out;
  out.reserve(2 * entries.size());
  for (const auto& e : entries) {
    out.push_back(e);
    if (e.p != e.q) out.push_back({e.q, e.p, e.value});
  }
  return out;
}

// Largest t in (0, inf] with X + t dX psd, given the Cholesky factor of X.
template <typename Mat, typename LLT>
typename Mat::Scalar max_psd_step(const LLT& llt, const Mat& dx) {
  using Scalar = typename Mat::Scalar;
  if (dx.rows() == 0) return std::numeric_limits<Scalar>::infinity();
  Mat t = llt.matrixL().solve(dx);
  t = llt.matrixL().solve(t.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
  const Scalar lo = es.eigenvalues().minCoeff();
  return lo < 0 ? -Scalar(1) / lo : std::numeric_limits<Scalar>::infinity();
}

template <typename Vec, typename Mask>
typename Vec::Scalar max_lp_step(const Vec& x, const Vec& dx, const Mask& active) {
  using Scalar = typename Vec::Scalar;
  Scalar t = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    if (active(i) && dx(i) < 0) t = std::min(t, -x(i) / dx(i));
  }
  return t;
}

}  // namespace detail

/// Infeasible primal-dual interior-point method with the HKM search
/// direction and Mehrotra predictor-corrector steps. Dense; intended for
/// blocks of a few hundred rows and a few thousand constraints.
template <typename Scalar>
Solution<Scalar> solve(const Problem<Scalar>& problem, const Settings<Scalar>& settings = {}) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;
  using std::abs;
  using std::max;
  using std::min;
  using std::sqrt;

  const Index n = problem.block_size;
  const Index nl = problem.lp_size;
  const auto m = static_cast<Index>(problem.constraints.size());
  const auto& cons = problem.constraints;

  const Vec c_lp = nl > 0 ? Vec(problem.objective_lp) : Vec(Vec::Zero(0));
  Mask bounded(nl);
  Vec ub = Vec::Zero(nl);
  for (Index k = 0; k < nl; ++k) {
    bounded(k) = std::isfinite(static_cast<double>(problem.lp_upper(k)));
    ub(k) = bounded(k) ? problem.lp_upper(k) : Scalar(0);
  }
  const Mask all_lp = Mask::Constant(nl, true);
  const Scalar cone_dim = static_cast<Scalar>(n + nl + bounded.count());

  std::vector<std::vector<SymEntry<Scalar>>> full(static_cast<std::size_t>(m));
  std::vector<std::vector<std::pair<Index, Scalar>>> lp_columns(static_cast<std::size_t>(nl));
  Vec b(m);
  for (Index i = 0; i < m; ++i) {
    full[static_cast<std::size_t>(i)] = detail::expand(cons[static_cast<std::size_t>(i)].sdp);
    b(i) = cons[static_cast<std::size_t>(i)].rhs;
    for (const auto& e : cons[static_cast<std::size_t>(i)].lp) {
      lp_columns[static_cast<std::size_t>(e.k)].emplace_back(i, e.value);
    }
  }
  Mat c_mat = Mat::Zero(n, n);
  for (const auto& e : detail::expand(problem.objective_sdp)) c_mat(e.p, e.q) += e.value;

  auto apply_a = [&](const Mat& xm, const Vec& xl) {
    Vec out(m);
    for (Index i = 0; i < m; ++i) {
      Scalar acc = 0;
      for (const auto& e : full[static_cast<std::size_t>(i)]) acc += e.value * xm(e.p, e.q);
      for (const auto& e : cons[static_cast<std::size_t>(i)].lp) acc += e.value * xl(e.k);
      out(i) = acc;
    }
    return out;
  };
  auto apply_at_sdp = [&](const Vec& y) {
    Mat out = Mat::Zero(n, n);
    for (Index i = 0; i < m; ++i) {
      for (const auto& e : full[static_cast<std::size_t>(i)]) out(e.p, e.q) += y(i) * e.value;
    }
    return out;
  };
  auto apply_at_lp = [&](const Vec& y) {
    Vec out = Vec::Zero(nl);
    for (Index k = 0; k < nl; ++k) {
      for (const auto& [i, a] : lp_columns[static_cast<std::size_t>(k)]) out(k) += y(i) * a;
    }
    return out;
  };

  // Starting point scaled to the data.
  Scalar a_norm_max = 0;
  Scalar xi = max<Scalar>(10, sqrt(cone_dim));
  for (Index i = 0; i < m; ++i) {
    Scalar fro2 = 0;
    for (const auto& e : full[static_cast<std::size_t>(i)]) fro2 += e.value * e.value;
    for (const auto& e : cons[static_cast<std::size_t>(i)].lp) fro2 += e.value * e.value;
    const Scalar fro = sqrt(fro2);
    a_norm_max = max(a_norm_max, fro);
    xi = max(xi, cone_dim * (1 + abs(b(i))) / (1 + fro));
  }
  const Scalar c_norm = sqrt(c_mat.squaredNorm() + c_lp.squaredNorm());
  const Scalar eta = max({Scalar(10), sqrt(cone_dim), a_norm_max, c_norm});
  const Scalar b_norm = sqrt(b.squaredNorm() + ub.squaredNorm());

  Solution<Scalar> cur;
  cur.X = xi * Mat::Identity(n, n);
  cur.S = eta * Mat::Identity(n, n);
  cur.x = Vec::Constant(nl, xi);
  cur.s = Vec::Constant(nl, eta);
  cur.v = Vec::Zero(nl);
  cur.w = Vec::Zero(nl);
  for (Index k = 0; k < nl; ++k) {
    if (!bounded(k)) continue;
    // Start strictly inside the box.
    cur.x(k) = ub(k) / 2;
    cur.v(k) = ub(k) / 2;
    cur.w(k) = eta;
  }
  cur.y = Vec::Zero(m);

  Solution<Scalar> best;
  Scalar best_merit = std::numeric_limits<Scalar>::infinity();
  int since_best = 0;
  Mat schur(m, m);
  for (int iter = 0; iter <= settings.max_iterations; ++iter) {
    Mat& X = cur.X;
    Mat& S = cur.S;
    Vec& x = cur.x;
    Vec& s = cur.s;
    Vec& v = cur.v;
    Vec& w = cur.w;
    Vec& y = cur.y;

    const Vec rp = b - apply_a(X, x);
    const Vec ru = bounded.select(ub - x - v, Vec::Zero(nl));
    const Mat rd = c_mat - S - apply_at_sdp(y);
    const Vec rdl = c_lp - s + w - apply_at_lp(y);
    const Scalar xs = X.cwiseProduct(S).sum() + x.dot(s) + v.dot(w);
    const Scalar mu = xs / cone_dim;
    cur.primal_objective = c_mat.cwiseProduct(X).sum() + c_lp.dot(x);
    cur.dual_objective = b.dot(y) - ub.dot(w);
    cur.relative_gap = abs(xs) / (1 + abs(cur.primal_objective) + abs(cur.dual_objective));
    cur.primal_infeasibility = sqrt(rp.squaredNorm() + ru.squaredNorm()) / (1 + b_norm);
    cur.dual_infeasibility = sqrt(rd.squaredNorm() + rdl.squaredNorm()) / (1 + c_norm);
    cur.iterations = iter;
    const Scalar merit = max({cur.relative_gap, cur.primal_infeasibility, cur.dual_infeasibility});
    if (merit < best_merit) {
      best_merit = merit;
      best = cur;
      since_best = 0;
    } else if (++since_best >= 5) {
      break;
    }
    if (merit <= settings.tolerance) {
      best.converged = true;
      break;
    }
    if (iter == settings.max_iterations) break;

    Eigen::LLT<Mat> x_chol(X);
    Eigen::LLT<Mat> s_chol(S);
    if (x_chol.info() != Eigen::Success || s_chol.info() != Eigen::Success) break;
    Mat s_inv = s_chol.solve(Mat::Identity(n, n));
    s_inv = Scalar(0.5) * (s_inv + s_inv.transpose());
    Vec dlp(nl);
    for (Index k = 0; k < nl; ++k) {
      dlp(k) = Scalar(1) / (s(k) / x(k) + (bounded(k) ? w(k) / v(k) : Scalar(0)));
    }

    // Schur complement M_ij = <A_i, X A_j S^-1> + sum_k a_ik a_jk dlp_k.
    for (Index i = 0; i < m; ++i) {
      const auto& ei = full[static_cast<std::size_t>(i)];
      for (Index j = 0; j <= i; ++j) {
        const auto& ej = full[static_cast<std::size_t>(j)];
        Scalar acc = 0;
        for (const auto& a : ei) {
          for (const auto& c : ej) acc += a.value * c.value * X(a.q, c.p) * s_inv(c.q, a.p);
        }
        schur(i, j) = acc;
      }
    }
    for (Index k = 0; k < nl; ++k) {
      for (const auto& [i, ai] : lp_columns[static_cast<std::size_t>(k)]) {
        for (const auto& [j, aj] : lp_columns[static_cast<std::size_t>(k)]) {
          if (j <= i) schur(i, j) += ai * aj * dlp(k);
        }
      }
    }
    const Mat schur_full = schur.template selfadjointView<Eigen::Lower>();
    // Near the optimum the Schur complement is badly conditioned; the pivoted
    // LDL^T factorization copes where plain Cholesky breaks down.
    Eigen::LLT<Mat> schur_chol(schur_full);
    Eigen::LDLT<Mat> schur_ldlt;
    const bool use_ldlt = schur_chol.info() != Eigen::Success;
    if (use_ldlt) {
      schur_ldlt.compute(schur_full);
      if (schur_ldlt.info() != Eigen::Success) break;
    }
    auto schur_solve = [&](const Vec& rhs) {
      auto once = [&](const Vec& r) {
        return use_ldlt ? Vec(schur_ldlt.solve(r)) : Vec(schur_chol.solve(r));
      };
      Vec out = once(rhs);
      for (int refine = 0; refine < 2; ++refine) out += once(rhs - schur_full * out);
      return out;
    };

    const Mat x_rd_sinv = X * rd * s_inv;

    Mat dX, dS;
    Vec dx, ds, dv, dw, dy;
    // g = target - X - (second-order term) for the psd block; g1, g2 the same
    // for the x s and v w complementarity pairs.
    auto direction = [&](const Mat& g, const Vec& g1, const Vec& g2) {
      Vec h(nl);
      for (Index k = 0; k < nl; ++k) {
        Scalar t = g1(k) / x(k) - rdl(k);
        if (bounded(k)) t -= (g2(k) - w(k) * ru(k)) / v(k);
        h(k) = dlp(k) * t;
      }
      const Vec rhs = rp - apply_a(g - x_rd_sinv, h);
      dy = schur_solve(rhs);
      dS = rd - apply_at_sdp(dy);
      dX = g - X * dS * s_inv;
      dX = Scalar(0.5) * (dX + dX.transpose()).eval();
      dx = h + (dlp.array() * apply_at_lp(dy).array()).matrix();
      ds = ((g1 - (s.array() * dx.array()).matrix()).array() / x.array()).matrix();
      dv = bounded.select(ru - dx, Vec::Zero(nl));
      dw = Vec::Zero(nl);
      for (Index k = 0; k < nl; ++k) {
        if (bounded(k)) dw(k) = (g2(k) - w(k) * dv(k)) / v(k);
      }
    };
    auto primal_step = [&]() {
      return min({detail::max_psd_step(x_chol, dX),
                  detail::max_lp_step(x, dx, all_lp), detail::max_lp_step(v, dv, bounded)});
    };
    auto dual_step = [&]() {
      return min({detail::max_psd_step(s_chol, dS),
                  detail::max_lp_step(s, ds, all_lp), detail::max_lp_step(w, dw, bounded)});
    };

    // Predictor.
    const Vec xs_pair = -(x.array() * s.array()).matrix();
    const Vec vw_pair = -(v.array() * w.array()).matrix();
    direction(-X, xs_pair, vw_pair);
    Scalar ap = min<Scalar>(1, primal_step());
    Scalar ad = min<Scalar>(1, dual_step());
    const Scalar mu_aff = ((X + ap * dX).cwiseProduct(S + ad * dS).sum() +
                           (x + ap * dx).dot(s + ad * ds) + (v + ap * dv).dot(w + ad * dw)) /
                          cone_dim;
    const Scalar ratio = max<Scalar>(0, mu_aff / mu);
    const Scalar expon = max<Scalar>(1, 3 * min(ap, ad) * min(ap, ad));
    const Scalar sigma = min<Scalar>(1, std::pow(ratio, expon));

    // Corrector.
    const Mat g = sigma * mu * s_inv - X - dX * dS * s_inv;
    const Vec g1 = (sigma * mu + xs_pair.array() - dx.array() * ds.array()).matrix();
    const Vec g2 = bounded.select((sigma * mu + vw_pair.array() - dv.array() * dw.array()).matrix(),
                                  Vec::Zero(nl));
    direction(g, g1, g2);
    ap = primal_step();
    ad = dual_step();
    const Scalar gamma = Scalar(0.9) + Scalar(0.09) * min<Scalar>(1, min(ap, ad));
    ap = min<Scalar>(1, gamma * ap);
    ad = min<Scalar>(1, gamma * ad);

    X += ap * dX;
    x += ap * dx;
    v += ap * dv;
    S += ad * dS;
    s += ad * ds;
    w += ad * dw;
    y += ad * dy;
  }
  return best;
}

extern template Solution<double> solve<double>(const Problem<double>&, const Settings<double>&);

}  // namespace ldpg::sdp

#endif  // LDPG_SDP_HPP_
