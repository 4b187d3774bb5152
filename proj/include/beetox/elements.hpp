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

#include <optional>
#include <span>
#include <string_view>

namespace beetox::elements {

inline constexpr int kMaxAtomicNumber = 118;

//! Element symbol for atomic number z (1..118).
std::string_view symbol(int z);

//! Standard average atomic weight in g/mol.
double average_weight(int z);

//! Atomic number for a symbol with standard capitalisation ("Cl", not "CL").
std::optional<int> from_symbol(std::string_view sym);

//! Allowed total valences for a neutral atom, ascending. Empty when the element has no fixed table (metals, noble
//! gases) and is therefore never valence-checked.
std::span<const int> default_valences(int z);

//! Allowed valences after the isoelectronic charge shift (N+ behaves like C, O- like F, ...).
std::span<const int> allowed_valences(int z, int formal_charge);

//! True for B, C, N, O, P, S, F, Cl, Br, I: the SMILES organic subset.
bool is_organic_subset(int z);

}  // namespace beetox::elements
