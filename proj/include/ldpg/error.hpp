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

#ifndef LDPG_ERROR_HPP_
#define LDPG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ldpg {

/// Precondition or construction failure on user-supplied data.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis, dataset or distribution refers to a different domain.
class DomainMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The SDP solver did not certify the requested duality gap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double last_gap)
      : std::runtime_error(what + " (last gap " + std::to_string(last_gap) + ")"),
        last_gap_(last_gap) {}

  double last_gap() const { return last_gap_; }

 private:
  double last_gap_;
};

/// A construction's stated property failed to hold numerically.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A learner found no acceptable hypothesis.
class LearningFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldpg

#endif  // LDPG_ERROR_HPP_
