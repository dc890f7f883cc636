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

#include "ldpg/matrices.hpp"

namespace ldpg {

IndexedMatrix build_concept_matrix(const ConceptClass& cls) {
  return IndexedMatrix(cls.names(), cls.domain(), cls.signs().cast<double>());
}

IndexedMatrix build_difference_matrix(const ConceptClass& cls) {
  const Index k = cls.size();
  const Eigen::MatrixXd w = cls.signs().cast<double>();
  Eigen::MatrixXd d(k * k, cls.domain_size());
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(k * k));
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      d.row(difference_row(a, b, k)) = 0.5 * (w.row(a) - w.row(b));
      rows.push_back(pair_label(cls.name(a), cls.name(b)));
    }
  }
  return IndexedMatrix(std::move(rows), cls.domain(), std::move(d));
}

std::vector<std::string> labeled_column_labels(const std::vector<std::string>& domain) {
  std::vector<std::string> cols;
  cols.reserve(domain.size() * 2);
  for (const auto& x : domain) {
    cols.push_back(labeled_point_label(x, +1));
    cols.push_back(labeled_point_label(x, -1));
  }
  return cols;
}

IndexedMatrix build_loss_query_matrix(const ConceptClass& cls) {
  Eigen::MatrixXd l(cls.size(), 2 * cls.domain_size());
  for (Index c = 0; c < cls.size(); ++c) {
    for (Index x = 0; x < cls.domain_size(); ++x) {
      l(c, labeled_column(x, +1)) = cls.value(c, x) != +1 ? 1.0 : 0.0;
      l(c, labeled_column(x, -1)) = cls.value(c, x) != -1 ? 1.0 : 0.0;
    }
  }
  return IndexedMatrix(cls.names(), labeled_column_labels(cls.domain()), std::move(l));
}

IndexedMatrix build_correlation_query_matrix(const ConceptClass& cls) {
  Eigen::MatrixXd q(cls.size(), 2 * cls.domain_size());
  for (Index c = 0; c < cls.size(); ++c) {
    for (Index x = 0; x < cls.domain_size(); ++x) {
      q(c, labeled_column(x, +1)) = cls.value(c, x);
      q(c, labeled_column(x, -1)) = -cls.value(c, x);
    }
  }
  return IndexedMatrix(cls.names(), labeled_column_labels(cls.domain()), std::move(q));
}

}  // namespace ldpg
