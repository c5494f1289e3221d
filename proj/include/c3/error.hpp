// Copyright 2026 The C3 Clustering Authors.
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

#ifndef C3_ERROR_HPP_
#define C3_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace c3 {

// Malformed files, inconsistent catalogs, bad parameters. The CLI maps these
// to its input-error exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file-located parse failure.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& reason)
      : InputError(source + ":" + std::to_string(line) + ": " + reason),
        source_(source),
        line_(line),
        reason_(reason) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string reason_;
};

// Solver or numerical failure. The CLI maps these to its numerical-failure
// exit code.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace c3

#endif  // C3_ERROR_HPP_
