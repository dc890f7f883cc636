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

#include "ldpg/zoo.hpp"

#include <bit>
#include <charconv>
#include <string>
#include <vector>

#include "ldpg/error.hpp"

namespace ldpg {

namespace {

constexpr int kMaxLine = 4096;
constexpr int kMaxCube = 4;

std::vector<std::string> line_points(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<std::string> cube_points(int k) {
  std::vector<std::string> out;
  for (int x = 0; x < (1 << k); ++x) {
    std::string s;
    for (int i = 0; i < k; ++i) s.push_back((x >> i) & 1 ? '1' : '0');
    out.push_back(std::move(s));
  }
  return out;
}

std::string subset_name(std::string_view prefix, int mask, int k) {
  std::string s(prefix);
  for (int i = 0; i < k; ++i) s.push_back((mask >> i) & 1 ? '1' : '0');
  return s;
}

void check_line(int n) {
  if (n < 1 || n > kMaxLine) throw InvalidArgument("domain size must lie in [1, 4096]");
}

void check_cube(int k) {
  if (k < 1 || k > kMaxCube) throw InvalidArgument("cube dimension must lie in [1, 4]");
}

int parse_size(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("bad size '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ConceptClass thresholds(int n) {
  check_line(n);
  Eigen::MatrixXi signs(n + 1, n);
  std::vector<std::string> names;
  for (int k = 0; k <= n; ++k) {
    names.push_back("t" + std::to_string(k));
    for (int x = 1; x <= n; ++x) signs(k, x - 1) = x > k ? 1 : -1;
  }
  return ConceptClass(line_points(n), std::move(names), std::move(signs));
}

ConceptClass point_functions(int n) {
  check_line(n);
  Eigen::MatrixXi signs = -Eigen::MatrixXi::Ones(n, n);
  signs.diagonal().setOnes();
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
  return ConceptClass(line_points(n), std::move(names), std::move(signs));
}

ConceptClass parities(int k) {
  check_cube(k);
  const int size = 1 << k;
  Eigen::MatrixXi signs(size, size);
  std::vector<std::string> names;
  for (int s = 0; s < size; ++s) {
    names.push_back(subset_name("xor", s, k));
    for (int x = 0; x < size; ++x) signs(s, x) = std::popcount(static_cast<unsigned>(s & x)) % 2 ? -1 : 1;
  }
  return ConceptClass(cube_points(k), std::move(names), std::move(signs));
}

ConceptClass conjunctions(int k) {
  check_cube(k);
  const int size = 1 << k;
  Eigen::MatrixXi signs(size, size);
  std::vector<std::string> names;
  for (int s = 0; s < size; ++s) {
    names.push_back(subset_name("and", s, k));
    for (int x = 0; x < size; ++x) signs(s, x) = (s & x) == s ? 1 : -1;
  }
  return ConceptClass(cube_points(k), std::move(names), std::move(signs));
}

ConceptClass singleton(int n) {
  check_line(n);
  return ConceptClass(line_points(n), {"one"}, Eigen::MatrixXi::Ones(1, n));
}

ConceptClass negation_closure(const ConceptClass& inner) {
  std::vector<std::string> names = inner.names();
  std::vector<Index> missing;
  for (Index c = 0; c < inner.size(); ++c) {
    if (inner.negation_of(c) < 0) missing.push_back(c);
  }
  Eigen::MatrixXi signs(inner.size() + static_cast<Index>(missing.size()), inner.domain_size());
  signs.topRows(inner.size()) = inner.signs();
  for (std::size_t i = 0; i < missing.size(); ++i) {
    signs.row(inner.size() + static_cast<Index>(i)) = -inner.signs().row(missing[i]);
    names.push_back("-" + inner.name(missing[i]));
  }
  return ConceptClass(inner.domain(), std::move(names), std::move(signs));
}

ConceptClass zoo(std::string_view spec) {
  std::string_view name;
  std::string_view arg;
  const auto open = spec.find('(');
  const auto colon = spec.find(':');
  if (open != std::string_view::npos && (colon == std::string_view::npos || open < colon)) {
    if (spec.back() != ')') throw InvalidArgument("unbalanced class spec '" + std::string(spec) + "'");
    name = spec.substr(0, open);
    arg = spec.substr(open + 1, spec.size() - open - 2);
  } else if (colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    arg = spec.substr(colon + 1);
  } else {
    throw InvalidArgument("class spec '" + std::string(spec) + "' needs an argument");
  }
  if (name == "negation-closure") return negation_closure(zoo(arg));
  const int n = parse_size(arg);
  if (name == "thresholds") return thresholds(n);
  if (name == "points") return point_functions(n);
  if (name == "parities") return parities(n);
  if (name == "conjunctions") return conjunctions(n);
  if (name == "singleton") return singleton(n);
  throw InvalidArgument("unknown concept class '" + std::string(name) + "'");
}

}  // namespace ldpg
