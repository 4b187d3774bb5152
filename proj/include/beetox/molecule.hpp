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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace beetox {

enum class BondOrder : std::uint8_t {
  kSingle   = 1,
  kDouble   = 2,
  kTriple   = 3,
  kAromatic = 4,
};

//! Bonds written with a symbol outside single/double/triple/aromatic. Stored with order kSingle and excluded from
//! valence sums; kernels label them "other".
enum class OtherBond : std::uint8_t {
  kNone,
  kDative,     // "->" from begin to end
  kQuadruple,  // "$"
};

struct Atom {
  int                atomic_number = 6;
  int                formal_charge = 0;
  bool               aromatic      = false;
  std::optional<int> isotope;
  //! Hydrogens written inside a bracket atom.
  int explicit_h = 0;
  //! Hydrogens added from the valence table for organic-subset atoms.
  int implicit_h = 0;
  //! Written as a bracket atom; brackets suppress implicit hydrogens.
  bool bracket = false;
  //! Computed by Molecule.
  bool in_ring = false;

  int hydrogen_count() const { return explicit_h + implicit_h; }
};

struct Bond {
  int       begin = 0;
  int       end   = 0;
  BondOrder order = BondOrder::kSingle;
  OtherBond other = OtherBond::kNone;
  //! Computed by Molecule.
  bool in_ring = false;
  //! Localised order after kekulisation (1..3); 0 for OtherBond entries.
  int kekule_order = 1;

  int  neighbor(int atom) const { return atom == begin ? end : begin; }
  bool is_other() const { return other != OtherBond::kNone; }
};

struct Neighbor {
  int atom;
  int bond;
};

//! Raised by the Molecule constructor; the SMILES parser rewraps it with a byte offset.
class MoleculeError : public std::runtime_error {
 public:
  enum class Kind { kTopology, kValence, kAromaticity };
  MoleculeError(Kind kind, int atom, const std::string& message)
      : std::runtime_error(message), kind_(kind), atom_(atom) {}
  Kind kind() const { return kind_; }
  int  atom() const { return atom_; }

 private:
  Kind kind_;
  int  atom_;
};

//! Immutable attributed molecular graph.
class Molecule {
 public:
  Molecule() = default;
  //! Validates the graph and derives rings, fragments and a kekule structure. Throws MoleculeError.
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const Atom&              atom(int i) const { return atoms_[i]; }
  const Bond&              bond(int i) const { return bonds_[i]; }

  std::span<const Neighbor> neighbors(int atom) const;
  int                       degree(int atom) const { return static_cast<int>(neighbors(atom).size()); }
  std::optional<int>        find_bond(int a, int b) const;

  //! Hydrogens on the atom: explicit + implicit + hydrogen atoms present as graph nodes.
  int total_hydrogens(int atom) const;
  //! Degree not counting hydrogen graph nodes.
  int heavy_degree(int atom) const;
  //! Sum of kekule bond orders plus attached hydrogens.
  int total_valence(int atom) const;

  int                     fragment_count() const { return fragment_count_; }
  int                     fragment_of(int atom) const { return fragment_[atom]; }
  std::vector<std::vector<int>> fragments() const;

  //! Smallest set of smallest rings, each as an ordered atom cycle.
  const std::vector<std::vector<int>>& rings() const { return rings_; }
  //! Number of SSSR rings containing the atom.
  int ring_count(int atom) const { return ring_count_[atom]; }
  //! Size of the smallest SSSR ring containing the atom, 0 if acyclic.
  int smallest_ring(int atom) const { return smallest_ring_[atom]; }
  //! True if the atom lies in an SSSR ring of exactly this size.
  bool in_ring_of_size(int atom, int size) const;
  //! Number of ring bonds incident to the atom.
  int ring_bond_count(int atom) const;

  //! Relabels atoms: atom i moves to position order[i]. Bonds are kept in their relative order.
  Molecule permuted(std::span<const int> order) const;
  //! Copy with every implicit and explicit hydrogen promoted to a graph atom.
  Molecule with_explicit_hydrogens() const;

 private:
  void build_adjacency();
  void validate() const;
  void compute_fragments();
  void compute_rings();
  void kekulize();

  std::vector<Atom>             atoms_;
  std::vector<Bond>             bonds_;
  std::vector<int>              adj_offset_;
  std::vector<Neighbor>         adj_;
  std::vector<int>              fragment_;
  int                           fragment_count_ = 0;
  std::vector<std::vector<int>> rings_;
  std::vector<int>              ring_count_;
  std::vector<int>              smallest_ring_;
};

//! Per-atom and per-bond flags, true iff the element lies on a simple cycle.
struct RingMembership {
  std::vector<bool> atoms;
  std::vector<bool> bonds;
};

RingMembership ring_membership(const Molecule& mol);

//! Bonds whose removal disconnects their component. Input edges are (begin, end) pairs over n vertices.
std::vector<bool> find_bridges(int n, std::span<const std::pair<int, int>> edges);

//! Hydrogens an organic-subset atom receives: valence_sum counts localised bonds (aromatic bonds as 1),
//! aromatic atoms need one extra unit when the sum is not already an allowed valence. Returns -1 when no allowed
//! valence fits.
int organic_implicit_hydrogens(int atomic_number, bool aromatic, int valence_sum);

//! Label-preserving isomorphism test (atomic number, charge, aromatic flag, hydrogen count, bond order).
bool isomorphic(const Molecule& a, const Molecule& b);

}  // namespace beetox
