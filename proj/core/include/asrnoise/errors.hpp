// Copyright 2026 The asrnoise Authors
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

#ifndef ASRNOISE_ERRORS_HPP_
#define ASRNOISE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace asrnoise {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (CLI exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Remote endpoint unreachable and no fallback available (CLI exit code 3).
class EndpointError : public Error {
 public:
  using Error::Error;
};

/// Tag-syntax parse failure with a machine-readable code.
class TagParseError : public DataError {
 public:
  enum class Code { UnbalancedBrace, NestedBrace, EmptySpan };

  TagParseError(Code code, const std::string& what)
      : DataError(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace asrnoise

#endif  // ASRNOISE_ERRORS_HPP_
