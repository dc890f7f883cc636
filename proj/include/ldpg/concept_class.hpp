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

#ifndef LDPG_CONCEPT_CLASS_HPP_
#define LDPG_CONCEPT_CLASS_HPP_

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace ldpg {

using Index = Eigen::Index;

/// A hypothesis or concept: one entry in {-1,+1} per domain point.
using SignVector = Eigen::VectorXi;

/// Finite domain X together with a finite set of named +-1 concepts.
///
/// Immutable after construction. Construction rejects empty domains, empty
/// classes, entries outside {-1,+1}, repeated names or point identifiers, and
/// duplicate concept vectors.
class ConceptClass {
 public:
  ConceptClass(std::vector<std::string> domain, std::vector<std::string> names,
               Eigen::MatrixXi signs);

  Index size() const { return signs_.rows(); }
  Index domain_size() const { return signs_.cols(); }

  const std::vector<std::string>& domain() const { return domain_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Index c) const { return names_[static_cast<std::size_t>(c)]; }

  /// |C| x |X| sign table, rows are concepts.
  const Eigen::MatrixXi& signs() const { return signs_; }
  SignVector concept_vector(Index c) const { return signs_.row(c).transpose(); }
  int value(Index c, Index x) const { return signs_(c, x); }

  /// Throws InvalidArgument for unknown identifiers.
  Index concept_index(std::string_view name) const;
  Index point_index(std::string_view point) const;

  /// Index of the concept equal to -c, or -1 when absent.
  Index negation_of(Index c) const;
  bool closed_under_negation() const;

 private:
  std::vector<std::string> domain_;
  std::vector<std::string> names_;
  Eigen::MatrixXi signs_;
};

/// Label of the ordered pair (a, b), used for rows of C x C matrices.
std::string pair_label(std::string_view a, std::string_view b);

/// Label of the labeled point (x, y), used for columns indexed by X x {+-1}.
std::string labeled_point_label(std::string_view point, int label);

/// Column of (x, y) in the interleaved X x {+-1} layout:
/// (x0,+1), (x0,-1), (x1,+1), ...
constexpr Index labeled_column(Index point, int label) {
  return 2 * point + (label > 0 ? 0 : 1);
}

}  // namespace ldpg

#endif  // LDPG_CONCEPT_CLASS_HPP_
