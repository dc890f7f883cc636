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

#include "ldpg/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ldpg/error.hpp"

namespace ldpg {

namespace {

Json rows_of(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Json vector_of(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json agnostic_members(const AgnosticHardFamily& f) {
  Json out = Json::array();
  for (const auto& m : f.members) {
    out.push_back({{"pair", pair_label(f.cls.name(m.first), f.cls.name(m.second))},
                   {"weight", m.weight},
                   {"loss_gap", m.loss_gap},
                   {"lambda", json_of(m.lambda)},
                   {"mu", json_of(m.mu)}});
  }
  return out;
}

Json realizable_members(const RealizableHardFamily& f) {
  Json out = Json::array();
  for (const auto& m : f.members) {
    out.push_back({{"concept", f.cls.name(m.concept_index)},
                   {"weight", m.weight},
                   {"loss", m.loss},
                   {"lambda", json_of(m.lambda)},
                   {"mu", json_of(m.mu)}});
  }
  return out;
}

}  // namespace

Json json_of(const IndexedMatrix& m) {
  return {{"rows", m.row_labels()}, {"cols", m.col_labels()}, {"values", rows_of(m.values())}};
}

Json json_of(const ConceptClass& cls) {
  Json signs = Json::array();
  for (Index c = 0; c < cls.size(); ++c) {
    Json row = Json::array();
    for (Index x = 0; x < cls.domain_size(); ++x) row.push_back(cls.value(c, x));
    signs.push_back(std::move(row));
  }
  return {{"domain", cls.domain()}, {"names", cls.names()}, {"signs", std::move(signs)}};
}

Json json_of(const WeightedIndex& w) {
  return {{"support", w.support()}, {"weights", vector_of(w.weights())}};
}

Json json_of(const LabeledDistribution& d) {
  return {{"domain", d.domain()},
          {"plus", vector_of(d.probs().col(0))},
          {"minus", vector_of(d.probs().col(1))}};
}

Json json_of(const Certificate& c) {
  return {{"upper", c.upper},
          {"lower", c.lower},
          {"gap", c.gap},
          {"iterations", c.iterations},
          {"primal_infeasibility", c.primal_infeasibility},
          {"dual_infeasibility", c.dual_infeasibility},
          {"eigenvalue_shift", c.eigenvalue_shift}};
}

Json json_of(const Factorization& f) {
  return {{"R", json_of(f.R)},
          {"A", json_of(f.A)},
          {"M_tilde", json_of(f.M_tilde)},
          {"residual_inf", f.residual_inf},
          {"gamma2_value", f.gamma2_value}};
}

Json json_of(const Gamma2Result& r) {
  return {{"value", r.value},
          {"factorization", json_of(r.factorization)},
          {"certificate", json_of(r.certificate)}};
}

Json json_of(const DualWitness& w) {
  return {{"U", json_of(w.U)},
          {"objective", w.objective},
          {"gamma2_star", w.gamma2_star},
          {"inner_product", w.inner_product},
          {"certificate", json_of(w.certificate)}};
}

Json json_of(const EtaSolution& e) {
  return {{"value", e.value},
          {"W", json_of(e.W)},
          {"theta", vector_of(e.theta)},
          {"W_tilde", json_of(e.W_tilde)},
          {"factorization", json_of(e.factorization)},
          {"certificate", json_of(e.certificate)}};
}

Json json_of(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"bound", c.bound}});
  }
  return {{"all_passed", r.all_passed()}, {"checks", std::move(checks)}};
}

Json json_of(const BinningResult& b) {
  return {{"selected", b.selected},
          {"score", b.score},
          {"bin_floor_value", b.bin_floor_value},
          {"guarantee", b.guarantee},
          {"mass", b.mass},
          {"bin", b.bin},
          {"levels", b.levels},
          {"cutoff", b.cutoff}};
}

Json json_of(const AgnosticHardFamily& f) {
  return {{"pi", json_of(f.pi)},
          {"members", agnostic_members(f)},
          {"U", json_of(f.U)},
          {"inner_product", f.inner_product},
          {"report", json_of(f.report)}};
}

Json json_of(const RefinedAgnosticFamily& f) {
  return {{"family", json_of(f.family)},
          {"U_tilde", json_of(f.U_tilde)},
          {"alpha", f.alpha},
          {"tau", f.tau},
          {"binning", json_of(f.binning)},
          {"gamma2_star_U", f.gamma2_star_U},
          {"gamma2_star_U_tilde", f.gamma2_star_U_tilde},
          {"min_property2", f.min_property2},
          {"min_cross_optimality", f.min_cross_optimality},
          {"report", json_of(f.report)}};
}

Json json_of(const RealizableHardFamily& f) {
  return {{"pi", json_of(f.pi)},
          {"members", realizable_members(f)},
          {"U", json_of(f.U)},
          {"Delta", f.Delta},
          {"alpha", f.alpha},
          {"report", json_of(f.report)}};
}

Json json_of(const RefinedRealizableFamily& f) {
  return {{"family", json_of(f.family)},
          {"U_tilde", json_of(f.U_tilde)},
          {"tau", f.tau},
          {"binning", json_of(f.binning)},
          {"gamma2_star_U", f.gamma2_star_U},
          {"gamma2_star_U_tilde", f.gamma2_star_U_tilde},
          {"level", f.level},
          {"report", json_of(f.report)}};
}

Json json_of(const MixedFamily& f) {
  return {{"family", json_of(f.family)}, {"level", f.level}, {"report", json_of(f.report)}};
}

Json json_of(const ReweightResult& r) {
  return {{"pi_hat", json_of(r.pi_hat)},
          {"norm", r.norm},
          {"bound", r.bound},
          {"capped", r.capped},
          {"cuts", r.cuts}};
}

Json json_of(const PrivacyAudit& a) {
  return {{"max_log_ratio", a.max_log_ratio}, {"analytic", a.analytic}};
}

IndexedMatrix matrix_from_json(const Json& j) {
  try {
    auto rows = j.at("rows").get<std::vector<std::string>>();
    auto cols = j.at("cols").get<std::vector<std::string>>();
    const Json& values = j.at("values");
    Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    if (values.size() != rows.size()) throw InvalidArgument("matrix row count mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (values[i].size() != cols.size()) throw InvalidArgument("matrix column count mismatch");
      for (std::size_t k = 0; k < cols.size(); ++k) {
        m(static_cast<Index>(i), static_cast<Index>(k)) = values[i][k].get<double>();
      }
    }
    return IndexedMatrix(std::move(rows), std::move(cols), std::move(m));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad matrix JSON: ") + e.what());
  }
}

ConceptClass class_from_json(const Json& j) {
  try {
    auto domain = j.at("domain").get<std::vector<std::string>>();
    auto names = j.at("names").get<std::vector<std::string>>();
    const Json& signs = j.at("signs");
    if (signs.size() != names.size()) throw InvalidArgument("one sign row per concept expected");
    Eigen::MatrixXi s(static_cast<Index>(names.size()), static_cast<Index>(domain.size()));
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (signs[c].size() != domain.size()) throw InvalidArgument("sign row length mismatch");
      for (std::size_t x = 0; x < domain.size(); ++x) {
        s(static_cast<Index>(c), static_cast<Index>(x)) = signs[c][x].get<int>();
      }
    }
    return ConceptClass(std::move(domain), std::move(names), std::move(s));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad concept class JSON: ") + e.what());
  }
}

DualWitness witness_from_json(const Json& j) {
  try {
    DualWitness w;
    w.U = matrix_from_json(j.at("U"));
    w.objective = j.value("objective", 0.0);
    w.gamma2_star = j.value("gamma2_star", 0.0);
    w.inner_product = j.value("inner_product", 0.0);
    return w;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad witness JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("cannot parse " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("error writing " + path);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  out << "x,y\n";
  for (const auto& r : data.records()) {
    out << data.domain()[static_cast<std::size_t>(r.point)] << ',' << (r.label > 0 ? "1" : "-1")
        << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in, const std::vector<std::string>& domain) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y") throw InvalidArgument("dataset CSV needs header x,y");
  std::vector<LabeledPoint> records;
  Index lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw InvalidArgument("dataset line " + std::to_string(lineno) + " has no label");
    }
    const std::string point = line.substr(0, comma);
    const std::string label = line.substr(comma + 1);
    Index p = -1;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i] == point) p = static_cast<Index>(i);
    }
    if (p < 0) throw DomainMismatch("unknown point '" + point + "' in dataset");
    if (label != "1" && label != "+1" && label != "-1") {
      throw InvalidArgument("dataset line " + std::to_string(lineno) + " has label " + label);
    }
    records.push_back({p, label == "-1" ? -1 : 1});
  }
  return Dataset(domain, std::move(records));
}

void write_transcript_csv(std::ostream& out, const std::vector<TranscriptMessage>& messages,
                          RandomizerKind kind) {
  if (kind == RandomizerKind::coord_rr) {
    out << "record_index,symbol\n";
    for (std::size_t i = 0; i < messages.size(); ++i) out << i << ',' << messages[i].symbol() << '\n';
    return;
  }
  const Index d = messages.empty() ? 0 : messages.front().vector.size();
  out << "record_index";
  for (Index k = 0; k < d; ++k) out << ",v" << k;
  out << '\n';
  for (std::size_t i = 0; i < messages.size(); ++i) {
    out << i;
    for (Index k = 0; k < d; ++k) out << ',' << shortest(messages[i].vector(k));
    out << '\n';
  }
}

}  // namespace ldpg
