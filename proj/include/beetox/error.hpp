// SPDX-FileCopyrightText: Copyright (c) 2026 The beetox Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beetox {

//! Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Bad configuration, unknown option or malformed rule/pattern file. CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

//! Unusable input data (unparseable record, missing column, unknown id). CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

//! Solver or numerical failure. CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

enum class SmilesErrorKind {
  kSyntax,
  kUnclosedRing,
  kValence,
  kAromaticity,
  kUnsupported,
};

const char* to_string(SmilesErrorKind kind);

class SmilesError : public DataError {
 public:
  SmilesError(SmilesErrorKind kind, std::size_t offset, const std::string& message);

  SmilesErrorKind kind() const { return kind_; }
  //! Byte offset into the input string.
  std::size_t offset() const { return offset_; }

 private:
  SmilesErrorKind kind_;
  std::size_t     offset_;
};

enum class SmartsErrorKind {
  kSyntax,
  kUnsupported,
};

class SmartsError : public ConfigError {
 public:
  SmartsError(SmartsErrorKind kind, std::size_t offset, const std::string& message);

  SmartsErrorKind kind() const { return kind_; }
  std::size_t     offset() const { return offset_; }

 private:
  SmartsErrorKind kind_;
  std::size_t     offset_;
};

//! Solver gave up before reaching its tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& message, long iterations);
  long iterations() const { return iterations_; }

 private:
  long iterations_;
};

}  // namespace beetox
