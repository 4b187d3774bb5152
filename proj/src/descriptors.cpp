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

#include "beetox/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>

#include <json.hpp>

#include "beetox/elements.hpp"
#include "beetox/error.hpp"
#include "beetox/parallel.hpp"

namespace beetox {

namespace {

struct CrippenRow {
  const char* type;
  const char* smarts;
  double      logp;
  double      mr;
};

constexpr CrippenRow kCrippenRows[] = {
#include "crippen_table.inc"
};

struct CrippenType {
  std::string_view type;
  Pattern          pattern;
  double           logp;
  double           mr;
};

const std::vector<CrippenType>& crippen_table() {
  static const std::vector<CrippenType> table = [] {
    std::vector<CrippenType> t;
    for (const CrippenRow& row : kCrippenRows) {
      t.push_back({row.type, parse_smarts(row.smarts), row.logp, row.mr});
    }
    return t;
  }();
  return table;
}

constexpr std::string_view kNames[] = {"molecular_weight", "heavy_atoms", "hbd",         "hba",
                                       "rotatable_bonds",  "logp",        "molar_refractivity",
                                       "total_atoms",      "aromatic_bonds", "hbd_strict", "hba_strict",
                                       "rotatable_bonds_strict"};

bool is_single(const Bond& b) {
  return b.order == BondOrder::kSingle && !b.is_other();
}

bool aliphatic(const Molecule& m, int i, int z) {
  return m.atom(i).atomic_number == z && !m.atom(i).aromatic;
}

// Atom has a double bond (optionally restricted to non-ring bonds) to an aliphatic O, N, P or S other than `skip`.
bool double_bonded_to_onps(const Molecule& m, int atom, int skip, bool non_ring_only) {
  for (const Neighbor& nb : m.neighbors(atom)) {
    const Bond& b = m.bond(nb.bond);
    if (nb.atom == skip || b.order != BondOrder::kDouble || (non_ring_only && b.in_ring)) {
      continue;
    }
    const Atom& o = m.atom(nb.atom);
    if (!o.aromatic && (o.atomic_number == 8 || o.atomic_number == 7 || o.atomic_number == 15 ||
                        o.atomic_number == 16)) {
      return true;
    }
  }
  return false;
}

bool has_triple_bond(const Molecule& m, int i) {
  for (const Neighbor& nb : m.neighbors(i)) {
    if (m.bond(nb.bond).order == BondOrder::kTriple) {
      return true;
    }
  }
  return false;
}

bool is_methyl(const Molecule& m, int i) {
  return aliphatic(m, i, 6) && m.total_hydrogens(i) == 3;
}

// Carbon carrying three F, three Cl, three Br or three methyl groups.
bool trihalo_or_tert_butyl(const Molecule& m, int i) {
  if (!aliphatic(m, i, 6)) {
    return false;
  }
  int f = 0, cl = 0, br = 0, me = 0;
  for (const Neighbor& nb : m.neighbors(i)) {
    const Bond& b = m.bond(nb.bond);
    if (!is_single(b) && b.order != BondOrder::kAromatic) {
      continue;
    }
    const int z = m.atom(nb.atom).atomic_number;
    f += aliphatic(m, nb.atom, 9) ? 1 : 0;
    cl += aliphatic(m, nb.atom, 17) ? 1 : 0;
    br += aliphatic(m, nb.atom, 35) ? 1 : 0;
    me += z == 6 && is_methyl(m, nb.atom) ? 1 : 0;
  }
  return f >= 3 || cl >= 3 || br >= 3 || me >= 3;
}

// Aliphatic degree-3 carbon with a double bond to N, O or S (or to N+ when `cationic`).
bool amide_like_carbon(const Molecule& m, int i, bool cationic) {
  if (!aliphatic(m, i, 6) || m.degree(i) != 3) {
    return false;
  }
  for (const Neighbor& nb : m.neighbors(i)) {
    if (m.bond(nb.bond).order != BondOrder::kDouble || m.atom(nb.atom).aromatic) {
      continue;
    }
    const Atom& o = m.atom(nb.atom);
    if (cationic ? (o.atomic_number == 7 && o.formal_charge == 1)
                 : (o.atomic_number == 7 || o.atomic_number == 8 || o.atomic_number == 16)) {
      return true;
    }
  }
  return false;
}

bool amide_like_heteroatom(const Molecule& m, int i, bool cationic) {
  if (m.atom(i).atomic_number == 7) {
    return !cationic || m.degree(i) != 1;
  }
  return !cationic && (aliphatic(m, i, 8) || (aliphatic(m, i, 16) && m.degree(i) != 1));
}

bool acyclic_single(const Bond& b) {
  return is_single(b) && !b.in_ring;
}

// Amide, ester, thioamide, amidine and related linkages, seen from either side.
bool in_amide_like_linkage(const Molecule& m, int i) {
  for (const bool cationic : {false, true}) {
    if (amide_like_carbon(m, i, cationic)) {
      for (const Neighbor& nb : m.neighbors(i)) {
        if (acyclic_single(m.bond(nb.bond)) && amide_like_heteroatom(m, nb.atom, cationic)) {
          return true;
        }
      }
    }
    if (amide_like_heteroatom(m, i, cationic)) {
      for (const Neighbor& nb : m.neighbors(i)) {
        if (acyclic_single(m.bond(nb.bond)) && amide_like_carbon(m, nb.atom, cationic)) {
          return true;
        }
      }
    }
  }
  return false;
}

bool rotor_end(const Molecule& m, int i) {
  return !has_triple_bond(m, i) && m.degree(i) != 1 && !trihalo_or_tert_butyl(m, i) && !is_methyl(m, i);
}

// Non-ring single or aromatic bond between two rotor ends, at least one outside an amide-like linkage.
bool strict_rotatable(const Molecule& m, const Bond& b) {
  if (b.in_ring || b.is_other() || (b.order != BondOrder::kSingle && b.order != BondOrder::kAromatic)) {
    return false;
  }
  if (!rotor_end(m, b.begin) || !rotor_end(m, b.end)) {
    return false;
  }
  return !in_amide_like_linkage(m, b.begin) || !in_amide_like_linkage(m, b.end);
}

bool strict_donor(const Molecule& m, int i) {
  const Atom& a = m.atom(i);
  const int   h = m.total_hydrogens(i);
  const int   v = m.total_valence(i);
  if (aliphatic(m, i, 7)) {
    return h > 0 && (v == 3 || (a.formal_charge == 1 && v == 4));
  }
  if (aliphatic(m, i, 8) || aliphatic(m, i, 16)) {
    return h == 1 && a.formal_charge == 0;
  }
  if (a.aromatic && a.atomic_number == 7) {
    return h == 1 && a.formal_charge == 0;
  }
  return false;
}

bool strict_acceptor(const Molecule& m, int i) {
  const Atom& a = m.atom(i);
  const int   h = m.total_hydrogens(i);
  const int   v = m.total_valence(i);
  if (aliphatic(m, i, 8) || aliphatic(m, i, 16)) {
    if (a.formal_charge == -1 || (h == 0 && v == 2)) {
      return true;
    }
    if (h == 1 && v == 2) {
      for (const Neighbor& nb : m.neighbors(i)) {
        if (is_single(m.bond(nb.bond)) && !double_bonded_to_onps(m, nb.atom, i, false)) {
          return true;
        }
      }
    }
    return false;
  }
  if (aliphatic(m, i, 7)) {
    if (v != 3) {
      return false;
    }
    for (const Neighbor& nb : m.neighbors(i)) {
      if (is_single(m.bond(nb.bond)) && double_bonded_to_onps(m, nb.atom, i, true)) {
        return false;
      }
    }
    return true;
  }
  if (a.aromatic && a.formal_charge == 0) {
    return (a.atomic_number == 7 && h == 0 && m.degree(i) == 2) || a.atomic_number == 8 || a.atomic_number == 16;
  }
  return false;
}

bool carbonyl_carbon(const Molecule& m, int i) {
  if (m.atom(i).atomic_number != 6) {
    return false;
  }
  for (const Neighbor& nb : m.neighbors(i)) {
    if (m.bond(nb.bond).order == BondOrder::kDouble && m.atom(nb.atom).atomic_number == 8) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<CrippenContribution> crippen_contributions(const Molecule& mol) {
  const Molecule                   h = mol.with_explicit_hydrogens();
  std::vector<CrippenContribution> out(h.atom_count(), CrippenContribution{"", 0.0, 0.0});
  std::vector<bool>                typed(h.atom_count(), false);
  int                              remaining = h.atom_count();
  for (const CrippenType& t : crippen_table()) {
    if (remaining == 0) {
      break;
    }
    const auto anchors = anchor_atoms(t.pattern, h);
    for (int i = 0; i < h.atom_count(); ++i) {
      if (anchors[i] && !typed[i]) {
        typed[i] = true;
        out[i]   = {t.type, t.logp, t.mr};
        --remaining;
      }
    }
  }
  return out;
}

DescriptorBlock compute_descriptors(const Molecule& mol) {
  DescriptorBlock d;
  const double    h_weight = elements::average_weight(1);
  for (int i = 0; i < mol.atom_count(); ++i) {
    const Atom& a = mol.atom(i);
    d.molecular_weight += elements::average_weight(a.atomic_number) + a.hydrogen_count() * h_weight;
    d.total_atoms += 1 + a.hydrogen_count();
    if (a.atomic_number != 1) {
      ++d.heavy_atoms;
    }
    if (a.atomic_number == 7 || a.atomic_number == 8) {
      ++d.hba;
      if (mol.total_hydrogens(i) > 0) {
        ++d.hbd;
      }
    }
    d.hbd_strict += strict_donor(mol, i) ? 1 : 0;
    d.hba_strict += strict_acceptor(mol, i) ? 1 : 0;
  }
  for (const Bond& b : mol.bonds()) {
    if (b.order == BondOrder::kAromatic) {
      ++d.aromatic_bonds;
    }
    d.rotatable_bonds_strict += strict_rotatable(mol, b) ? 1 : 0;
    if (!is_single(b) || b.in_ring) {
      continue;
    }
    const int u = b.begin;
    const int v = b.end;
    if (mol.atom(u).atomic_number == 1 || mol.atom(v).atomic_number == 1) {
      continue;
    }
    if (mol.heavy_degree(u) < 2 || mol.heavy_degree(v) < 2) {
      continue;
    }
    if ((carbonyl_carbon(mol, u) && mol.atom(v).atomic_number == 7) ||
        (carbonyl_carbon(mol, v) && mol.atom(u).atomic_number == 7)) {
      continue;
    }
    ++d.rotatable_bonds;
  }
  for (const CrippenContribution& c : crippen_contributions(mol)) {
    d.logp += c.logp;
    d.molar_refractivity += c.mr;
  }
  return d;
}

std::span<const std::string_view> descriptor_names() {
  return kNames;
}

std::optional<double> descriptor_value(const DescriptorBlock& b, std::string_view name) {
  if (name == "molecular_weight") return b.molecular_weight;
  if (name == "heavy_atoms") return b.heavy_atoms;
  if (name == "hbd") return b.hbd;
  if (name == "hba") return b.hba;
  if (name == "rotatable_bonds") return b.rotatable_bonds;
  if (name == "logp") return b.logp;
  if (name == "molar_refractivity") return b.molar_refractivity;
  if (name == "total_atoms") return b.total_atoms;
  if (name == "aromatic_bonds") return b.aromatic_bonds;
  if (name == "hbd_strict") return b.hbd_strict;
  if (name == "hba_strict") return b.hba_strict;
  if (name == "rotatable_bonds_strict") return b.rotatable_bonds_strict;
  return std::nullopt;
}

void validate_rules(const FilterRuleSet& rules) {
  for (const RangeRule& r : rules.ranges) {
    if (std::find(std::begin(kNames), std::end(kNames), r.descriptor) == std::end(kNames)) {
      throw ConfigError("filter " + rules.name + ": unknown descriptor '" + r.descriptor + "'");
    }
    if (r.min > r.max) {
      throw ConfigError("filter " + rules.name + ": min > max for " + r.descriptor);
    }
  }
  if (rules.max_violations < 0) {
    throw ConfigError("filter " + rules.name + ": max_violations must be >= 0");
  }
}

FilterResult apply_filter(const Molecule& mol, const DescriptorBlock& block, const FilterRuleSet& rules) {
  validate_rules(rules);
  FilterResult result;
  int          range_violations = 0;
  for (const RangeRule& r : rules.ranges) {
    const double v = *descriptor_value(block, r.descriptor);
    if (v < r.min || v > r.max) {
      ++range_violations;
      result.violations.push_back(r.descriptor);
    }
  }
  bool alert = false;
  for (const NamedPattern& p : rules.alerts) {
    if (match_exists(p.pattern, mol)) {
      alert = true;
      result.violations.push_back("alert:" + p.name);
    }
  }
  result.pass = !alert && range_violations <= rules.max_violations;
  return result;
}

FilterResult apply_filter(const Molecule& mol, const FilterRuleSet& rules) {
  return apply_filter(mol, compute_descriptors(mol), rules);
}

FilterRuleSet load_filter_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open filter file " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  FilterRuleSet rules;
  try {
    rules.name           = doc.at("name").get<std::string>();
    rules.max_violations = doc.value("max_violations", 0);
    for (const auto& r : doc.value("ranges", nlohmann::json::array())) {
      RangeRule rule;
      rule.descriptor = r.at("descriptor").get<std::string>();
      if (r.contains("min")) {
        rule.min = r.at("min").get<double>();
      }
      if (r.contains("max")) {
        rule.max = r.at("max").get<double>();
      }
      rules.ranges.push_back(rule);
    }
    if (doc.contains("alerts")) {
      std::filesystem::path alerts = doc.at("alerts").get<std::string>();
      if (alerts.is_relative()) {
        alerts = std::filesystem::path(path).parent_path() / alerts;
      }
      rules.alerts = load_pattern_file(alerts.string(), true).patterns;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  validate_rules(rules);
  return rules;
}

PassRateTable filter_pass_rates(std::span<const NamedMolecules> datasets, std::span<const FilterRuleSet> rulesets) {
  PassRateTable table;
  for (const auto& r : rulesets) {
    validate_rules(r);
    table.filters.push_back(r.name);
  }
  for (const auto& d : datasets) {
    table.datasets.push_back(d.name);
  }
  table.values.assign(rulesets.size(), std::vector<double>(datasets.size(), 100.0));
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const auto&                    mols = datasets[d].molecules;
    std::vector<std::vector<char>> pass(mols.size(), std::vector<char>(rulesets.size(), 0));
    parallel_for(mols.size(), [&](std::size_t i) {
      const DescriptorBlock block = compute_descriptors(mols[i]);
      for (std::size_t f = 0; f < rulesets.size(); ++f) {
        pass[i][f] = apply_filter(mols[i], block, rulesets[f]).pass ? 1 : 0;
      }
    });
    for (std::size_t f = 0; f < rulesets.size(); ++f) {
      if (mols.empty()) {
        continue;
      }
      std::size_t passed = 0;
      for (const auto& row : pass) {
        passed += static_cast<std::size_t>(row[f]);
      }
      table.values[f][d] = 100.0 * static_cast<double>(passed) / static_cast<double>(mols.size());
    }
  }
  return table;
}

}  // namespace beetox
