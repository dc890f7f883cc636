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

#include "ldpg/factor_norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ldpg/error.hpp"
#include "ldpg/matrices.hpp"
#include "ldpg/norms.hpp"
#include "ldpg/sdp.hpp"

namespace ldpg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Problem = sdp::Problem<double>;

void check_settings(const SdpSettings& settings) {
  if (!(settings.tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (settings.max_iterations < 1) throw InvalidArgument("solver needs at least one iteration");
}

void check_block(Index n) {
  if (n > kMaxBlockSize) {
    throw InvalidArgument("block matrix of size " + std::to_string(n) + " exceeds the limit " +
                          std::to_string(kMaxBlockSize));
  }
}

std::vector<std::string> factor_labels(Index k) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) out.push_back("k" + std::to_string(i));
  return out;
}

// Every row maps to a representative row (or to nothing, for zero rows) up
// to sign.
struct LineMap {
  std::vector<Index> representatives;
  std::vector<Index> target;  // index into representatives, -1 for zero rows
  std::vector<double> sign;
};

LineMap reduce_rows(const MatrixXd& m) {
  LineMap out;
  std::map<std::vector<double>, Index> seen;
  std::vector<double> rep_sign;
  for (Index i = 0; i < m.rows(); ++i) {
    Index lead = 0;
    while (lead < m.cols() && m(i, lead) == 0.0) ++lead;
    if (lead == m.cols()) {
      out.target.push_back(-1);
      out.sign.push_back(0.0);
      continue;
    }
    const double s = m(i, lead) > 0.0 ? 1.0 : -1.0;
    std::vector<double> key(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) key[static_cast<std::size_t>(j)] = s * m(i, j) + 0.0;
    auto [it, inserted] = seen.emplace(std::move(key), static_cast<Index>(out.representatives.size()));
    if (inserted) {
      out.representatives.push_back(i);
      rep_sign.push_back(s);
    }
    out.target.push_back(it->second);
    out.sign.push_back(s * rep_sign[static_cast<std::size_t>(it->second)]);
  }
  return out;
}

MatrixXd select(const MatrixXd& m, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  MatrixXd out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

// Off-diagonal block coupling: [[0, U], [U^T, 0]] / 2.
MatrixXd coupling(const MatrixXd& u) {
  const Index m = u.rows();
  const Index n = u.cols();
  MatrixXd c = MatrixXd::Zero(m + n, m + n);
  c.topRightCorner(m, n) = 0.5 * u;
  c.bottomLeftCorner(n, m) = 0.5 * u.transpose();
  return c;
}

struct Factors {
  MatrixXd R;
  MatrixXd A;
  double value = 0;
  double shift = 0;
};

// Factors a symmetric block matrix whose off-diagonal block is already the
// target. Only the diagonal is shifted, so R A reproduces that block; the
// shift raises the upper bound and is caught by the gap check.
Factors factor_block(MatrixXd z, Index m) {
  const Index n = z.rows() - m;
  z = 0.5 * (z + z.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(z);
  const VectorXd& lambda = es.eigenvalues();
  const double lo = lambda.size() > 0 ? lambda.minCoeff() : 0.0;
  Factors out;
  out.shift = std::max(0.0, -lo);
  std::vector<Index> keep;
  for (Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) + out.shift > 0.0) keep.push_back(k);
  }
  MatrixXd f(z.rows(), std::max<Index>(1, static_cast<Index>(keep.size())));
  f.setZero();
  for (std::size_t k = 0; k < keep.size(); ++k) {
    f.col(static_cast<Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(lambda(keep[k]) + out.shift);
  }
  out.R = f.topRows(m);
  out.A = f.bottomRows(n).transpose();
  out.value = balance_factors(out.R, out.A);
  return out;
}

Certificate make_certificate(const sdp::Solution<double>& sol, double upper, double lower,
                             double shift) {
  Certificate c;
  c.upper = upper;
  c.lower = lower;
  c.gap = upper - lower;
  c.iterations = sol.iterations;
  c.primal_infeasibility = sol.primal_infeasibility;
  c.dual_infeasibility = sol.dual_infeasibility;
  c.eigenvalue_shift = shift;
  return c;
}

void check_gap(const Certificate& c, const SdpSettings& settings, const char* what) {
  if (!(c.gap <= settings.tolerance * std::max(1.0, c.upper))) {
    throw SolverError(std::string(what) + ": certified gap above tolerance", c.gap);
  }
}

sdp::Solution<double> run(const Problem& problem, const SdpSettings& settings) {
  sdp::Settings<double> s;
  s.tolerance = std::min(1e-10, settings.tolerance * 1e-3);
  s.max_iterations = settings.max_iterations;
  return sdp::solve(problem, s);
}

// Adds t and the constraints Z_kk <= t; returns the index of t.
Index add_diagonal_bound(Problem& p) {
  const Index t = p.add_lp_variable(1.0);
  for (Index k = 0; k < p.block_size; ++k) {
    const Index slack = p.add_lp_variable(0.0);
    p.constraints.push_back({{{k, k, 1.0}}, {{slack, 1.0}, {t, -1.0}}, 0.0});
  }
  return t;
}

// Adds sum(entries . Z) - l = lo with l in [0, width]; returns l.
Index add_box(Problem& p, std::vector<sdp::SymEntry<double>> entries, double lo, double width) {
  const Index l = p.add_lp_variable(0.0, width);
  p.constraints.push_back({std::move(entries), {{l, -1.0}}, lo});
  return l;
}

struct Gamma2Core {
  MatrixXd R, A, M_tilde, U;
  double gamma2_star_bound = 0;
  Certificate certificate;
};

// gamma_2(M, alpha) on a matrix without zero, repeated or opposite lines.
Gamma2Core solve_gamma2_core(const MatrixXd& mr, double alpha, const SdpSettings& settings) {
  const Index m = mr.rows();
  const Index n = mr.cols();
  check_block(m + n);
  Problem p;
  p.block_size = m + n;
  add_diagonal_bound(p);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (alpha == 0.0) {
        p.constraints.push_back({{{i, m + j, 0.5}}, {}, mr(i, j)});
      } else {
        add_box(p, {{i, m + j, 0.5}}, mr(i, j) - alpha, 2.0 * alpha);
      }
    }
  }
  const auto sol = run(p, settings);

  Gamma2Core out;
  const MatrixXd lo = mr.array() - alpha;
  const MatrixXd hi = mr.array() + alpha;
  out.M_tilde = sol.X.topRightCorner(m, n).cwiseMax(lo).cwiseMin(hi);
  MatrixXd z = sol.X;
  z.topRightCorner(m, n) = out.M_tilde;
  z.bottomLeftCorner(n, m) = out.M_tilde.transpose();
  Factors f = factor_block(std::move(z), m);
  out.R = std::move(f.R);
  out.A = std::move(f.A);

  const MatrixXd s = 0.5 * (sol.S + sol.S.transpose());
  out.U = -2.0 * s.topRightCorner(m, n);
  out.gamma2_star_bound = gamma2_dual_bound(out.U, s.diagonal());
  const double numerator = frobenius_dot(mr, out.U) - alpha * entrywise_l1(out.U);
  const double lower = out.gamma2_star_bound > 0.0 ? std::max(0.0, numerator / out.gamma2_star_bound) : 0.0;
  out.certificate = make_certificate(sol, f.value, lower, f.shift);
  check_gap(out.certificate, settings, "gamma2");
  return out;
}

struct LiftedGamma2 {
  Gamma2Result result;
  MatrixXd U;  // zero outside representative lines
  double gamma2_star_bound = 0;
};

LiftedGamma2 gamma2_with_witness(const IndexedMatrix& M, double alpha, const SdpSettings& settings) {
  check_settings(settings);
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be finite and >= 0");
  if (M.rows() == 0 || M.cols() == 0) throw InvalidArgument("gamma2 of an empty matrix");
  const MatrixXd& mv = M.values();

  const LineMap rows = reduce_rows(mv);
  std::vector<Index> all_cols(static_cast<std::size_t>(mv.cols()));
  for (Index j = 0; j < mv.cols(); ++j) all_cols[static_cast<std::size_t>(j)] = j;
  const LineMap cols = reduce_rows(select(mv, rows.representatives, all_cols).transpose());
  const MatrixXd mr = select(mv, rows.representatives, cols.representatives);

  LiftedGamma2 out;
  Gamma2Core core;
  const bool trivial = mr.size() == 0 || alpha >= max_abs_entry(mr);
  if (trivial) {
    core.R = MatrixXd::Zero(mr.rows(), 1);
    core.A = MatrixXd::Zero(1, mr.cols());
    core.M_tilde = MatrixXd::Zero(mr.rows(), mr.cols());
    core.U = MatrixXd::Zero(mr.rows(), mr.cols());
  } else {
    core = solve_gamma2_core(mr, alpha, settings);
  }

  const Index k = core.R.cols();
  MatrixXd r_full = MatrixXd::Zero(mv.rows(), k);
  MatrixXd a_full = MatrixXd::Zero(k, mv.cols());
  MatrixXd mt_full = MatrixXd::Zero(mv.rows(), mv.cols());
  out.U = MatrixXd::Zero(mv.rows(), mv.cols());
  for (Index i = 0; i < mv.rows(); ++i) {
    const Index ri = rows.target[static_cast<std::size_t>(i)];
    if (ri >= 0) r_full.row(i) = rows.sign[static_cast<std::size_t>(i)] * core.R.row(ri);
  }
  for (Index j = 0; j < mv.cols(); ++j) {
    const Index cj = cols.target[static_cast<std::size_t>(j)];
    if (cj >= 0) a_full.col(j) = cols.sign[static_cast<std::size_t>(j)] * core.A.col(cj);
  }
  for (Index i = 0; i < mv.rows(); ++i) {
    const Index ri = rows.target[static_cast<std::size_t>(i)];
    if (ri < 0) continue;
    for (Index j = 0; j < mv.cols(); ++j) {
      const Index cj = cols.target[static_cast<std::size_t>(j)];
      if (cj < 0) continue;
      mt_full(i, j) = rows.sign[static_cast<std::size_t>(i)] * cols.sign[static_cast<std::size_t>(j)] *
                      core.M_tilde(ri, cj);
    }
  }
  for (std::size_t a = 0; a < rows.representatives.size(); ++a) {
    for (std::size_t b = 0; b < cols.representatives.size(); ++b) {
      out.U(rows.representatives[a], cols.representatives[b]) =
          core.U(static_cast<Index>(a), static_cast<Index>(b));
    }
  }
  out.gamma2_star_bound = core.gamma2_star_bound;

  Factorization& fz = out.result.factorization;
  fz.gamma2_value = balance_factors(r_full, a_full);
  fz.residual_inf = max_abs_entry(mt_full - mv);
  fz.R = IndexedMatrix(M.row_labels(), factor_labels(k), std::move(r_full));
  fz.A = IndexedMatrix(factor_labels(k), M.col_labels(), std::move(a_full));
  fz.M_tilde = IndexedMatrix(M.row_labels(), M.col_labels(), std::move(mt_full));
  out.result.value = fz.gamma2_value;
  out.result.certificate = core.certificate;
  if (trivial) out.result.certificate = Certificate{};
  return out;
}

}  // namespace

double balance_factors(MatrixXd& R, MatrixXd& A) {
  const double r = R.size() == 0 ? 0.0 : R.rowwise().norm().maxCoeff();
  const double a = A.size() == 0 ? 0.0 : A.colwise().norm().maxCoeff();
  if (r > 0.0 && a > 0.0) {
    const double scale = std::sqrt(a / r);
    R *= scale;
    A /= scale;
  }
  return r * a;
}

double gamma2_dual_bound(const MatrixXd& U, const VectorXd& y) {
  const Index dim = U.rows() + U.cols();
  if (y.size() != dim) throw InvalidArgument("dual bound: y has the wrong length");
  MatrixXd t = -coupling(U);
  t.diagonal() += y;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(t, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return y.sum() + static_cast<double>(dim) * std::max(0.0, -lo);
}

Factorization truncate_factorization(const Factorization& f, const IndexedMatrix& target,
                                     double relative_cutoff) {
  const MatrixXd& r = f.R.values();
  const MatrixXd& a = f.A.values();
  if (target.rows() != r.rows() || target.cols() != a.cols()) {
    throw DomainMismatch("factorization does not match the target matrix");
  }
  MatrixXd stacked(r.rows() + a.cols(), r.cols());
  stacked << r, a.transpose();
  Eigen::BDCSVD<MatrixXd> svd(stacked, Eigen::ComputeThinU);
  const VectorXd& sv = svd.singularValues();
  Index keep = 0;
  const double top = sv.size() > 0 ? sv(0) * sv(0) : 0.0;
  while (keep < sv.size() && sv(keep) * sv(keep) > relative_cutoff * top) ++keep;
  keep = std::max<Index>(1, keep);
  const MatrixXd g = svd.matrixU().leftCols(keep) * sv.head(keep).asDiagonal();
  MatrixXd r_new = g.topRows(r.rows());
  MatrixXd a_new = g.bottomRows(a.cols()).transpose();

  Factorization out;
  out.gamma2_value = balance_factors(r_new, a_new);
  MatrixXd mt = r_new * a_new;
  out.residual_inf = max_abs_entry(mt - target.values());
  const std::vector<std::string> inner = factor_labels(keep);
  out.M_tilde = IndexedMatrix(target.row_labels(), target.col_labels(), std::move(mt));
  out.R = IndexedMatrix(target.row_labels(), inner, std::move(r_new));
  out.A = IndexedMatrix(inner, target.col_labels(), std::move(a_new));
  return out;
}

Gamma2Result gamma2(const IndexedMatrix& M, const SdpSettings& settings) {
  return gamma2_with_witness(M, 0.0, settings).result;
}

Gamma2Result gamma2_approx(const IndexedMatrix& M, double alpha, const SdpSettings& settings) {
  return gamma2_with_witness(M, alpha, settings).result;
}

namespace {

Gamma2DualResult gamma2_dual_dense(const MatrixXd& u, const SdpSettings& settings) {
  const Index m = u.rows();
  const Index n = u.cols();
  check_block(m + n);

  Problem p;
  p.block_size = m + n;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (u(i, j) != 0.0) p.objective_sdp.push_back({i, m + j, -0.5 * u(i, j)});
    }
  }
  for (Index k = 0; k < m + n; ++k) p.constraints.push_back({{{k, k, 1.0}}, {}, 1.0});
  const auto sol = run(p, settings);

  // Upper bound from the dual diagonal, lower bound from unit-ball vectors.
  const double upper = gamma2_dual_bound(u, -sol.y);
  MatrixXd z = 0.5 * (sol.X + sol.X.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(z);
  const VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  MatrixXd f = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
  for (Index k = 0; k < f.rows(); ++k) {
    const double norm = f.row(k).norm();
    if (norm > 1.0) f.row(k) /= norm;
  }
  Gamma2DualResult out;
  out.f = f.topRows(m);
  out.g = f.bottomRows(n);
  const double lower = (out.f * out.g.transpose()).cwiseProduct(u).sum();
  out.value = upper;
  out.certificate = make_certificate(sol, upper, lower, 0.0);
  check_gap(out.certificate, settings, "gamma2_dual");
  return out;
}

}  // namespace

Gamma2DualResult gamma2_dual(const IndexedMatrix& U, const SdpSettings& settings) {
  check_settings(settings);
  const MatrixXd& u = U.values();
  if (u.rows() == 0 || u.cols() == 0) throw InvalidArgument("gamma2_dual of an empty matrix");
  std::vector<Index> rows;
  std::vector<Index> cols;
  for (Index i = 0; i < u.rows(); ++i) {
    if (!u.row(i).isZero(0.0)) rows.push_back(i);
  }
  for (Index j = 0; j < u.cols(); ++j) {
    if (!u.col(j).isZero(0.0)) cols.push_back(j);
  }
  if (rows.empty()) {
    Gamma2DualResult out;
    out.f = MatrixXd::Zero(u.rows(), 1);
    out.g = MatrixXd::Zero(u.cols(), 1);
    return out;
  }
  if (static_cast<Index>(rows.size()) == u.rows() && static_cast<Index>(cols.size()) == u.cols()) {
    return gamma2_dual_dense(u, settings);
  }
  Gamma2DualResult core = gamma2_dual_dense(select(u, rows, cols), settings);
  Gamma2DualResult out = core;
  out.f = MatrixXd::Zero(u.rows(), core.f.cols());
  out.g = MatrixXd::Zero(u.cols(), core.g.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.f.row(rows[i]) = core.f.row(static_cast<Index>(i));
  for (std::size_t j = 0; j < cols.size(); ++j) out.g.row(cols[j]) = core.g.row(static_cast<Index>(j));
  return out;
}

DualWitness agnostic_dual_witness(const IndexedMatrix& D, double alpha, const SdpSettings& settings) {
  LiftedGamma2 solved = gamma2_with_witness(D, alpha, settings);
  const MatrixXd& d = D.values();
  MatrixXd u = std::move(solved.U);
  if (solved.result.value <= settings.tolerance) {
    throw InvalidArgument("dual degenerate: gamma2(D, alpha) = 0");
  }
  for (Index i = 0; i < u.rows(); ++i) {
    if (d.row(i).dot(u.row(i)) < 0.0) u.row(i) *= -1.0;
  }
  const double l1 = entrywise_l1(u);
  if (!(l1 > 0.0)) throw InvalidArgument("dual degenerate: zero witness");
  u /= l1;

  DualWitness out;
  out.gamma2_star = solved.gamma2_star_bound / l1;
  out.inner_product = frobenius_dot(d, u);
  out.objective = (out.inner_product - alpha) / out.gamma2_star;
  if (!(out.objective > 0.0)) throw InvalidArgument("dual degenerate: nonpositive objective");
  out.U = IndexedMatrix(D.row_labels(), D.col_labels(), std::move(u));
  out.certificate = solved.result.certificate;
  return out;
}

namespace {

bool is_correct_column(const ConceptClass& cls, Index c, Index j) {
  return labeled_column(j / 2, cls.value(c, j / 2)) == j;
}

struct EtaCore {
  EtaSolution solution;
  MatrixXd U;  // post-processed into S_C, not normalized
  double gamma2_star_bound = 0;
  double wrong_mass = 0;
};

// Each row is pinned to its correct-label entry at the first point, so theta
// is eliminated: W~_cj - W~_cj0 = w_cj - w_cj0.
EtaCore solve_eta(const ConceptClass& cls, double alpha, const SdpSettings& settings) {
  check_settings(settings);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("eta needs 0 < alpha < 1");
  const Index k = cls.size();
  const Index cols = 2 * cls.domain_size();
  check_block(k + cols);

  Problem p;
  p.block_size = k + cols;
  add_diagonal_bound(p);
  std::vector<Index> l0(static_cast<std::size_t>(k));
  for (Index c = 0; c < k; ++c) {
    const Index j0 = labeled_column(0, cls.value(c, 0));
    const Index base = p.add_lp_variable(0.0, 2.0 * alpha);
    l0[static_cast<std::size_t>(c)] = base;
    for (Index j = 0; j < cols; ++j) {
      if (j == j0) continue;
      std::vector<sdp::SymEntry<double>> diff = {{c, k + j, 0.5}, {c, k + j0, -0.5}};
      if (is_correct_column(cls, c, j)) {
        const Index v = p.add_lp_variable(0.0, 2.0 * alpha);
        p.constraints.push_back({std::move(diff), {{v, -1.0}, {base, 1.0}}, 0.0});
      } else {
        const Index v = p.add_lp_variable(0.0);
        p.constraints.push_back({std::move(diff), {{v, -1.0}, {base, 1.0}}, 1.0 + alpha});
      }
    }
  }
  const auto sol = run(p, settings);

  EtaCore out;
  EtaSolution& es = out.solution;
  MatrixXd wt = sol.X.topRightCorner(k, cols);
  es.theta.resize(k);
  MatrixXd w(k, cols);
  for (Index c = 0; c < k; ++c) {
    const Index j0 = labeled_column(0, cls.value(c, 0));
    const double base = std::clamp(sol.x(l0[static_cast<std::size_t>(c)]), 0.0, 2.0 * alpha);
    es.theta(c) = wt(c, j0) + alpha - base;
    for (Index j = 0; j < cols; ++j) {
      const double raw = wt(c, j) - es.theta(c);
      w(c, j) = is_correct_column(cls, c, j) ? std::clamp(raw, -alpha, alpha) : std::max(1.0, raw);
    }
  }
  wt = w + es.theta * VectorXd::Ones(cols).transpose();
  MatrixXd z = sol.X;
  z.topRightCorner(k, cols) = wt;
  z.bottomLeftCorner(cols, k) = wt.transpose();
  Factors f = factor_block(std::move(z), k);

  const std::vector<std::string> col_labels = labeled_column_labels(cls.domain());
  Factorization& fz = es.factorization;
  fz.gamma2_value = f.value;
  const std::vector<std::string> inner = factor_labels(f.R.cols());
  fz.R = IndexedMatrix(cls.names(), inner, std::move(f.R));
  fz.A = IndexedMatrix(inner, col_labels, std::move(f.A));
  fz.M_tilde = IndexedMatrix(cls.names(), col_labels, wt);
  fz.residual_inf = 0.0;
  es.W = IndexedMatrix(cls.names(), col_labels, std::move(w));
  es.W_tilde = IndexedMatrix(cls.names(), col_labels, std::move(wt));
  es.value = f.value;

  const MatrixXd s = 0.5 * (sol.S + sol.S.transpose());
  MatrixXd u = -2.0 * s.topRightCorner(k, cols);
  double correct_mass = 0.0;
  for (Index c = 0; c < k; ++c) {
    const Index j0 = labeled_column(0, cls.value(c, 0));
    for (Index j = 0; j < cols; ++j) {
      if (!is_correct_column(cls, c, j)) u(c, j) = std::max(0.0, u(c, j));
    }
    u(c, j0) -= u.row(c).sum();
    for (Index j = 0; j < cols; ++j) {
      if (is_correct_column(cls, c, j)) {
        correct_mass += std::abs(u(c, j));
      } else {
        out.wrong_mass += u(c, j);
      }
    }
  }
  out.gamma2_star_bound = gamma2_dual_bound(u, s.diagonal());
  const double numerator = out.wrong_mass - alpha * correct_mass;
  const double lower = out.gamma2_star_bound > 0.0 ? std::max(0.0, numerator / out.gamma2_star_bound) : 0.0;
  out.U = std::move(u);
  es.certificate = make_certificate(sol, f.value, lower, f.shift);
  check_gap(es.certificate, settings, "eta");
  return out;
}

}  // namespace

EtaSolution eta(const ConceptClass& cls, double alpha, const SdpSettings& settings) {
  return solve_eta(cls, alpha, settings).solution;
}

DualWitness eta_dual_witness(const ConceptClass& cls, double alpha, const SdpSettings& settings) {
  EtaCore core = solve_eta(cls, alpha, settings);
  const double l1 = entrywise_l1(core.U);
  if (!(l1 > 0.0) || core.solution.certificate.lower <= settings.tolerance) {
    throw InvalidArgument("dual degenerate: eta(C, alpha) is numerically zero");
  }
  DualWitness out;
  out.gamma2_star = core.gamma2_star_bound / l1;
  out.inner_product = core.wrong_mass / l1;
  out.objective = core.solution.certificate.lower;
  out.U = IndexedMatrix(cls.names(), labeled_column_labels(cls.domain()), core.U / l1);
  out.certificate = core.solution.certificate;
  return out;
}

bool in_eta_dual_set(const ConceptClass& cls, const MatrixXd& U, double tol) {
  if (U.rows() != cls.size() || U.cols() != 2 * cls.domain_size()) return false;
  for (Index c = 0; c < U.rows(); ++c) {
    if (std::abs(U.row(c).sum()) > tol) return false;
    for (Index j = 0; j < U.cols(); ++j) {
      if (!is_correct_column(cls, c, j) && U(c, j) < -tol) return false;
    }
  }
  return true;
}

}  // namespace ldpg
