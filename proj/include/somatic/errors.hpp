// Copyright 2026 The Somatic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace somatic {

/// Invalid input: out-of-range values, malformed beliefs, unknown labels.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A label has prior mass but no anchor in the somatic potential.
class MissingAnchorError : public ValidationError {
 public:
  explicit MissingAnchorError(std::string label)
      : ValidationError("no anchor for label '" + label + "'"), label_(std::move(label)) {}

  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

/// A query was made against an empty candidate set.
class NoCandidatesError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Normalization or integration broke down (zero total mass, non-finite values).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace somatic
