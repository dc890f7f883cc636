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

#ifndef LDPG_ZOO_HPP_
#define LDPG_ZOO_HPP_

#include <string>
#include <string_view>

#include "ldpg/concept_class.hpp"

namespace ldpg {

/// Thresholds on {1..N}: t_k(x) = +1 iff x > k, for k = 0..N.
ConceptClass thresholds(int n);

/// Point functions on {1..N}: p_i(x) = +1 iff x = i.
ConceptClass point_functions(int n);

/// Parities over {0,1}^k, one per subset of coordinates, k in [1, 4].
ConceptClass parities(int k);

/// Monotone conjunctions over {0,1}^k, the empty one included, k in [1, 4].
ConceptClass conjunctions(int k);

/// The constant +1 concept on {1..N}.
ConceptClass singleton(int n);

/// Adds the negation of every concept whose negation is missing; added
/// concepts are named "-" + name.
ConceptClass negation_closure(const ConceptClass& inner);

/// Parses "thresholds(16)", "thresholds:16", "points(3)", "parities(2)",
/// "conjunctions(3)", "singleton(2)" and "negation-closure(<inner>)".
ConceptClass zoo(std::string_view spec);

}  // namespace ldpg

#endif  // LDPG_ZOO_HPP_
