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

#include "ldpg/indexed_matrix.hpp"

#include <utility>

#include "ldpg/error.hpp"

namespace ldpg {

IndexedMatrix::IndexedMatrix(std::vector<std::string> row_labels,
                             std::vector<std::string> col_labels, Eigen::MatrixXd values)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      values_(std::move(values)) {
  if (values_.rows() != static_cast<Eigen::Index>(row_labels_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(col_labels_.size())) {
    throw InvalidArgument("indexed matrix: " + std::to_string(values_.rows()) + "x" +
                          std::to_string(values_.cols()) + " entries for " +
                          std::to_string(row_labels_.size()) + " row and " +
                          std::to_string(col_labels_.size()) + " column labels");
  }
  if (!values_.allFinite()) throw InvalidArgument("indexed matrix: non-finite entry");
}

IndexedMatrix IndexedMatrix::unlabeled(Eigen::MatrixXd values) {
  std::vector<std::string> rows, cols;
  for (Eigen::Index i = 0; i < values.rows(); ++i) rows.push_back("r" + std::to_string(i));
  for (Eigen::Index j = 0; j < values.cols(); ++j) cols.push_back("c" + std::to_string(j));
  return IndexedMatrix(std::move(rows), std::move(cols), std::move(values));
}

Eigen::Index IndexedMatrix::row_index(std::string_view label) const {
  for (std::size_t i = 0; i < row_labels_.size(); ++i) {
    if (row_labels_[i] == label) return static_cast<Eigen::Index>(i);
  }
  return -1;
}

Eigen::Index IndexedMatrix::col_index(std::string_view label) const {
  for (std::size_t j = 0; j < col_labels_.size(); ++j) {
    if (col_labels_[j] == label) return static_cast<Eigen::Index>(j);
  }
  return -1;
}

}  // namespace ldpg
