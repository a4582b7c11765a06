// Copyright 2026 The Multiorder Authors
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

#ifndef MULTIORDER_ERRORS_H_
#define MULTIORDER_ERRORS_H_

#include <stdexcept>
#include <string>

namespace multiorder {

// Malformed input or violated precondition (mixed groups, a ≻ b intervals,
// empty difference sets, unparsable encodings).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query about an infinite object ran past the finite part that was
// computed: outside an OrderWindow, beyond a search cap, or beyond the
// hierarchy depth. Callers may retry with a larger window.
class HorizonError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An operation whose mathematical precondition does not hold for the given
// inputs, e.g. transferring a pair between orders that are not asymptotic.
class PreconditionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Config file or command-line value that cannot be interpreted.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multiorder

#endif  // MULTIORDER_ERRORS_H_
