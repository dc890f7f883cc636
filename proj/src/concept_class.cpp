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

#include "ldpg/concept_class.hpp"

#include <map>
#include <set>
#include <utility>

#include "ldpg/error.hpp"

namespace ldpg {

ConceptClass::ConceptClass(std::vector<std::string> domain, std::vector<std::string> names,
                           Eigen::MatrixXi signs)
    : domain_(std::move(domain)), names_(std::move(names)), signs_(std::move(signs)) {
  if (domain_.empty()) throw InvalidArgument("concept class: empty domain");
  if (names_.empty()) throw InvalidArgument("concept class: no concepts");
  if (signs_.rows() != static_cast<Index>(names_.size()) ||
      signs_.cols() != static_cast<Index>(domain_.size())) {
    throw InvalidArgument("concept class: sign table is " + std::to_string(signs_.rows()) + "x" +
                          std::to_string(signs_.cols()) + ", expected " +
                          std::to_string(names_.size()) + "x" + std::to_string(domain_.size()));
  }
  if (std::set<std::string>(domain_.begin(), domain_.end()).size() != domain_.size()) {
    throw InvalidArgument("concept class: duplicate point identifier");
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size()) {
    throw InvalidArgument("concept class: duplicate concept name");
  }
  if (((signs_.array() != 1) && (signs_.array() != -1)).any()) {
    throw InvalidArgument("concept class: entries must be +1 or -1");
  }
  std::map<std::vector<int>, Index> seen;
  for (Index c = 0; c < size(); ++c) {
    std::vector<int> key(static_cast<std::size_t>(domain_size()));
    for (Index x = 0; x < domain_size(); ++x) key[static_cast<std::size_t>(x)] = signs_(c, x);
    auto [it, inserted] = seen.emplace(std::move(key), c);
    if (!inserted) {
      throw InvalidArgument("concept class: concepts '" + names_[static_cast<std::size_t>(it->second)] +
                            "' and '" + name(c) + "' are identical");
    }
  }
}

Index ConceptClass::concept_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Index>(i);
  }
  throw InvalidArgument("unknown concept '" + std::string(name) + "'");
}

Index ConceptClass::point_index(std::string_view point) const {
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == point) return static_cast<Index>(i);
  }
  throw DomainMismatch("unknown point '" + std::string(point) + "'");
}

Index ConceptClass::negation_of(Index c) const {
  for (Index d = 0; d < size(); ++d) {
    if ((signs_.row(d) + signs_.row(c)).isZero()) return d;
  }
  return -1;
}

bool ConceptClass::closed_under_negation() const {
  for (Index c = 0; c < size(); ++c) {
    if (negation_of(c) < 0) return false;
  }
  return true;
}

std::string pair_label(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

std::string labeled_point_label(std::string_view point, int label) {
  return pair_label(point, label > 0 ? "+1" : "-1");
}

}  // namespace ldpg
