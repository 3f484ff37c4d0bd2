// Copyright 2026 The faprop Authors
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

namespace faprop {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested truncation rank exceeds the support of a finite spectrum.
class RankExceededError : public Error {
 public:
  using Error::Error;
};

/// A series or partition function diverges where a finite value is required.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix, state, channel or ensemble.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Configuration or serialized object that does not match its schema; the
/// message starts with the path of the offending field.
class SchemaError : public ValidationError {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : ValidationError(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// No admissible input satisfies a constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace faprop
