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

#include "beetox/error.hpp"

namespace beetox {

const char* to_string(SmilesErrorKind kind) {
  switch (kind) {
    case SmilesErrorKind::kSyntax:
      return "syntax";
    case SmilesErrorKind::kUnclosedRing:
      return "unclosed_ring";
    case SmilesErrorKind::kValence:
      return "valence";
    case SmilesErrorKind::kAromaticity:
      return "aromaticity";
    case SmilesErrorKind::kUnsupported:
      return "unsupported";
  }
  return "unknown";
}

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t offset, const std::string& message)
    : DataError(std::string("SMILES ") + to_string(kind) + " error at offset " + std::to_string(offset) + ": " +
                message),
      kind_(kind),
      offset_(offset) {}

SmartsError::SmartsError(SmartsErrorKind kind, std::size_t offset, const std::string& message)
    : ConfigError(std::string("SMARTS ") + (kind == SmartsErrorKind::kSyntax ? "syntax" : "unsupported") +
                  " error at offset " + std::to_string(offset) + ": " + message),
      kind_(kind),
      offset_(offset) {}

ConvergenceError::ConvergenceError(const std::string& message, long iterations)
    : NumericalError(message + " (after " + std::to_string(iterations) + " iterations)"),
      iterations_(iterations) {}

}  // namespace beetox
