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

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beetox/molecule.hpp"
#include "beetox/pattern.hpp"

namespace beetox {

struct DescriptorBlock {
  double molecular_weight   = 0.0;
  int    heavy_atoms        = 0;
  //! N and O atoms bearing at least one hydrogen.
  int hbd = 0;
  //! N and O atom count.
  int hba             = 0;
  int rotatable_bonds = 0;
  double logp               = 0.0;
  double molar_refractivity = 0.0;
  //! Heavy atoms plus all hydrogens.
  int total_atoms    = 0;
  int aromatic_bonds = 0;
  //! Pharmacophore-style donor/acceptor counts (hydroxyl, amine and aromatic NH donors; acceptors excluding amide
  //! N and acid OH), as used by the pesticide-likeness rules.
  int hbd_strict = 0;
  int hba_strict = 0;
  //! Rotatable bonds excluding amide-like linkages, triple-bond ends, CX3 and tert-butyl rotors.
  int rotatable_bonds_strict = 0;
};

DescriptorBlock compute_descriptors(const Molecule& mol);

//! Value by field name, nullopt for unknown names.
std::optional<double>         descriptor_value(const DescriptorBlock& block, std::string_view name);
std::span<const std::string_view> descriptor_names();

struct CrippenContribution {
  std::string_view type;
  double           logp;
  double           mr;
};

//! Per-atom Wildman-Crippen types for the hydrogen-expanded graph (heavy atoms first, in input order).
std::vector<CrippenContribution> crippen_contributions(const Molecule& mol);

struct RangeRule {
  std::string descriptor;
  double      min = -std::numeric_limits<double>::infinity();
  double      max = std::numeric_limits<double>::infinity();
};

struct FilterRuleSet {
  std::string            name;
  std::vector<RangeRule> ranges;
  std::vector<NamedPattern> alerts;
  //! Range violations tolerated before failing (0 = strict).
  int max_violations = 0;
};

struct FilterResult {
  bool                     pass = true;
  std::vector<std::string> violations;
};

//! Throws ConfigError for an unknown descriptor name or an inverted range.
void         validate_rules(const FilterRuleSet& rules);
FilterResult apply_filter(const Molecule& mol, const FilterRuleSet& rules);
FilterResult apply_filter(const Molecule& mol, const DescriptorBlock& block, const FilterRuleSet& rules);

//! Loads a JSON rule file: {"name", "ranges": [{"descriptor", "min", "max"}], "alerts": "<pattern file>",
//! "max_violations"}. Relative alert paths resolve against the rule file's directory.
FilterRuleSet load_filter_rules(const std::string& path);

struct NamedMolecules {
  std::string               name;
  std::span<const Molecule> molecules;
};

struct PassRateTable {
  std::vector<std::string>         filters;
  std::vector<std::string>         datasets;
  //! values[filter][dataset], percent.
  std::vector<std::vector<double>> values;
};

PassRateTable filter_pass_rates(std::span<const NamedMolecules> datasets, std::span<const FilterRuleSet> rulesets);

}  // namespace beetox
