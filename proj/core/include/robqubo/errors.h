// Copyright 2026 The robqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBQUBO_ERRORS_H_
#define ROBQUBO_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robqubo {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed in data that violates an operation's precondition
// (dimension mismatch, index out of range, non-binary bit, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed instance or artifact text. `line()` is 1-based, 0 when the
// problem is not tied to a particular line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError(line == 0 ? what
                             : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A value lies outside the interval an operation accepts.
class RangeError : public InputError {
 public:
  using InputError::InputError;
};

// The object is not in a state that permits the operation.
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace robqubo

#endif  // ROBQUBO_ERRORS_H_
