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
#include <string>
#include <string_view>
#include <vector>

#include "beetox/error.hpp"
#include "beetox/molecule.hpp"

namespace beetox {

struct ParseWarning {
  std::size_t offset;
  std::string message;
};

struct ParsedSmiles {
  Molecule                  molecule;
  std::vector<ParseWarning> warnings;
};

//! Parses OpenSMILES input. Stereo marks are accepted and dropped; parsing stops at the first whitespace.
//! Throws SmilesError.
Molecule     parse_smiles(std::string_view text);
ParsedSmiles parse_smiles_with_warnings(std::string_view text);

//! Non-canonical SMILES that reparses to an isomorphic graph.
std::string write_smiles(const Molecule& mol);

}  // namespace beetox
