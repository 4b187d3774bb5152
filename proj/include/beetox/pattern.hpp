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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "beetox/error.hpp"
#include "beetox/molecule.hpp"

namespace beetox {

//! Node of an atom or bond constraint tree.
struct QueryNode {
  enum class Op : std::uint8_t {
    kTrue,
    kAnd,
    kOr,
    kNot,
    // atom primitives
    kAtomicNumber,  // value = Z
    kAromatic,      // value = 1 aromatic, 0 aliphatic
    kCharge,
    kRingCount,     // value = SSSR ring count; -1 = in any ring
    kRingSize,      // value = size; -1 = in any ring
    kDegree,
    kTotalH,
    kImplicitH,     // value = count; -1 = at least one
    kConnectivity,
    kValence,
    kRingConnectivity,  // value = ring bond count; -1 = at least one
    kIsotope,
    // bond primitives
    kBondSingle,
    kBondDouble,
    kBondTriple,
    kBondAromatic,
    kBondRing,
    kBondDefault,  // unwritten bond: single or aromatic
  };
  Op                     op    = Op::kTrue;
  int                    value = 0;
  std::vector<QueryNode> children;
};

struct PatternBond {
  int       begin;
  int       end;
  QueryNode query;
};

//! Parsed SMARTS query graph. Immutable after construction.
class Pattern {
 public:
  Pattern() = default;
  Pattern(std::string source, std::vector<QueryNode> atoms, std::vector<PatternBond> bonds);

  const std::string&              source() const { return source_; }
  int                             atom_count() const { return static_cast<int>(atoms_.size()); }
  int                             bond_count() const { return static_cast<int>(bonds_.size()); }
  const std::vector<QueryNode>&   atoms() const { return atoms_; }
  const std::vector<PatternBond>& bonds() const { return bonds_; }
  //! Neighbours of pattern atom i as (atom, bond) pairs.
  const std::vector<std::pair<int, int>>& neighbors(int i) const { return adjacency_[i]; }

 private:
  std::string                                   source_;
  std::vector<QueryNode>                        atoms_;
  std::vector<PatternBond>                      bonds_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

//! Parses the supported SMARTS subset. Throws SmartsError (kUnsupported for recursive or disconnected patterns).
Pattern parse_smarts(std::string_view text);

bool matches_atom(const QueryNode& q, const Molecule& mol, int atom);
bool matches_bond(const QueryNode& q, const Molecule& mol, int bond);

//! Number of distinct matched atom sets.
int match_count(const Pattern& pattern, const Molecule& mol);
bool match_exists(const Pattern& pattern, const Molecule& mol);
//! True if some embedding maps the first pattern atom onto `atom`.
bool match_at(const Pattern& pattern, const Molecule& mol, int atom);
//! Flags every molecule atom that the first pattern atom maps onto in some embedding.
std::vector<bool> anchor_atoms(const Pattern& pattern, const Molecule& mol);
//! One mapping (pattern atom -> molecule atom) per distinct atom set, in discovery order.
std::vector<std::vector<int>> find_matches(const Pattern& pattern, const Molecule& mol);

struct NamedPattern {
  std::string name;
  Pattern     pattern;
};

struct SkippedPattern {
  std::string name;
  std::string smarts;
  std::string reason;
};

//! A "NAME<TAB>SMARTS" pattern file.
struct PatternSet {
  std::string                 source;
  std::vector<NamedPattern>   patterns;
  std::vector<SkippedPattern> skipped;

  std::size_t declared() const { return patterns.size() + skipped.size(); }
  double      coverage() const;
};

//! Lenient mode skips and records entries outside the supported subset; strict mode throws on the first one.
PatternSet load_pattern_file(const std::string& path, bool lenient = true);
PatternSet parse_pattern_text(std::string_view text, const std::string& source, bool lenient = true);

}  // namespace beetox
