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

#ifndef LDPG_INDEXED_MATRIX_HPP_
#define LDPG_INDEXED_MATRIX_HPP_

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace ldpg {

/// Dense real matrix whose rows and columns carry semantic labels
/// (concepts, concept pairs, points, labeled points).
class IndexedMatrix {
 public:
  IndexedMatrix() = default;
  IndexedMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                Eigen::MatrixXd values);

  /// Labels "r0", "r1", ... and "c0", "c1", ...
  static IndexedMatrix unlabeled(Eigen::MatrixXd values);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  /// -1 when absent.
  Eigen::Index row_index(std::string_view label) const;
  Eigen::Index col_index(std::string_view label) const;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Eigen::MatrixXd values_;
};

}  // namespace ldpg

#endif  // LDPG_INDEXED_MATRIX_HPP_
