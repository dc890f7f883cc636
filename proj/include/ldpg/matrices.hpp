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

#ifndef LDPG_MATRICES_HPP_
#define LDPG_MATRICES_HPP_

#include <string>
#include <vector>

#include "ldpg/concept_class.hpp"
#include "ldpg/indexed_matrix.hpp"

namespace ldpg {

/// W: rows C, columns X, entry c(x).
IndexedMatrix build_concept_matrix(const ConceptClass& cls);

/// D: rows (c, c') in C^2 (row-major over the pair), columns X,
/// entry (c(x) - c'(x)) / 2.
IndexedMatrix build_difference_matrix(const ConceptClass& cls);

/// L: rows C, columns X x {+-1}, entry 1[c(x) != y] = (1 - y c(x)) / 2.
IndexedMatrix build_loss_query_matrix(const ConceptClass& cls);

/// Rows C, columns X x {+-1}, entry y c(x). Answers E[y c(x)] = 1 - 2 loss(c).
IndexedMatrix build_correlation_query_matrix(const ConceptClass& cls);

/// Labels of X x {+-1} in the interleaved column order.
std::vector<std::string> labeled_column_labels(const std::vector<std::string>& domain);

/// Row index of (a, b) in build_difference_matrix.
constexpr Index difference_row(Index a, Index b, Index class_size) { return a * class_size + b; }

}  // namespace ldpg

#endif  // LDPG_MATRICES_HPP_
