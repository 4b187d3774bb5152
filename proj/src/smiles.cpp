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

#include "beetox/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "beetox/elements.hpp"

namespace beetox {

namespace {

struct BondSpec {
  bool        present  = false;
  BondOrder   order    = BondOrder::kSingle;
  OtherBond   other    = OtherBond::kNone;
  bool        reversed = false;  // "<-": points back at the atom where it was written
  std::size_t offset   = 0;

  bool same_as(const BondSpec& o) const { return order == o.order && other == o.other; }
};

struct RawBond {
  int         from;
  int         to;
  BondSpec    spec;
  std::size_t offset;
};

struct RingOpen {
  int         atom;
  BondSpec    spec;
  std::size_t offset;
};

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text) : s_(text) {}

  ParsedSmiles run() {
    std::size_t end = 0;
    while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end]))) {
      ++end;
    }
    s_ = s_.substr(0, end);
    if (s_.empty()) {
      throw SmilesError(SmilesErrorKind::kSyntax, 0, "empty SMILES");
    }
    while (pos_ < s_.size()) {
      step();
    }
    if (pending_.present) {
      throw SmilesError(SmilesErrorKind::kSyntax, pending_.offset, "bond without a following atom");
    }
    if (!branches_.empty()) {
      throw SmilesError(SmilesErrorKind::kSyntax, branch_offsets_.back(), "unclosed branch");
    }
    if (!rings_.empty()) {
      const auto& first = *std::min_element(rings_.begin(), rings_.end(), [](const auto& a, const auto& b) {
        return a.second.offset < b.second.offset;
      });
      throw SmilesError(SmilesErrorKind::kUnclosedRing, first.second.offset,
                        "ring bond " + std::to_string(first.first) + " is never closed");
    }
    return build();
  }

 private:
  char peek(std::size_t k = 0) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw SmilesError(SmilesErrorKind::kSyntax, at, msg);
  }

  void step() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      if (prev_ < 0) {
        fail("branch without a preceding atom", at);
      }
      if (pending_.present) {
        fail("bond before branch", pending_.offset);
      }
      branches_.push_back(prev_);
      branch_offsets_.push_back(at);
      ++pos_;
      if (peek() == ')') {
        fail("empty branch", pos_);
      }
      return;
    }
    if (c == ')') {
      if (branches_.empty()) {
        fail("unmatched ')'", at);
      }
      if (pending_.present) {
        fail("bond without a following atom", pending_.offset);
      }
      prev_ = branches_.back();
      branches_.pop_back();
      branch_offsets_.pop_back();
      ++pos_;
      return;
    }
    if (c == '.') {
      if (pending_.present) {
        fail("bond before '.'", pending_.offset);
      }
      prev_ = -1;
      ++pos_;
      return;
    }
    if (parse_bond()) {
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
      ring_bond();
      return;
    }
    if (c == '[') {
      add_atom(parse_bracket(), at);
      return;
    }
    add_atom(parse_organic(), at);
  }

  bool parse_bond() {
    const char  c  = peek();
    const std::size_t at = pos_;
    BondSpec    spec;
    spec.present = true;
    spec.offset  = at;
    switch (c) {
      case '-':
        if (peek(1) == '>') {
          spec.other = OtherBond::kDative;
          pos_ += 2;
        } else {
          ++pos_;
        }
        break;
      case '<':
        if (peek(1) != '-') {
          fail("unexpected '<'", at);
        }
        spec.other    = OtherBond::kDative;
        spec.reversed = true;
        pos_ += 2;
        break;
      case '/':
      case '\\':
        ++pos_;
        break;
      case '=':
        spec.order = BondOrder::kDouble;
        ++pos_;
        break;
      case '#':
        spec.order = BondOrder::kTriple;
        ++pos_;
        break;
      case ':':
        spec.order = BondOrder::kAromatic;
        ++pos_;
        break;
      case '$':
        spec.other = OtherBond::kQuadruple;
        ++pos_;
        break;
      default:
        return false;
    }
    if (spec.other != OtherBond::kNone) {
      warnings_.push_back({at, "bond treated as single (other)"});
    }
    if (prev_ < 0) {
      fail("bond without a preceding atom", at);
    }
    if (pending_.present) {
      fail("two consecutive bond symbols", at);
    }
    pending_ = spec;
    return true;
  }

  void ring_bond() {
    const std::size_t at = pos_;
    if (prev_ < 0) {
      fail("ring bond without a preceding atom", at);
    }
    int label = 0;
    if (peek() == '%') {
      ++pos_;
      if (peek() == '(') {
        ++pos_;
        std::size_t digits = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          label = label * 10 + (peek() - '0');
          ++pos_;
          ++digits;
        }
        if (digits == 0 || peek() != ')') {
          fail("malformed %(...) ring label", at);
        }
        ++pos_;
      } else {
        if (!std::isdigit(static_cast<unsigned char>(peek())) || !std::isdigit(static_cast<unsigned char>(peek(1)))) {
          fail("'%' must be followed by two digits", at);
        }
        label = (peek() - '0') * 10 + (peek(1) - '0');
        pos_ += 2;
      }
    } else {
      label = peek() - '0';
      ++pos_;
    }
    auto it = rings_.find(label);
    if (it == rings_.end()) {
      rings_[label] = {prev_, pending_, at};
      pending_      = {};
      return;
    }
    const RingOpen open = it->second;
    rings_.erase(it);
    if (open.atom == prev_) {
      fail("ring bond closes on its own atom", at);
    }
    BondSpec spec;
    int      from = prev_;
    int      to   = open.atom;
    if (open.spec.present && pending_.present && !open.spec.same_as(pending_)) {
      fail("conflicting ring bond symbols", at);
    }
    if (open.spec.present) {
      spec = open.spec;
      from = open.atom;
      to   = prev_;
    } else if (pending_.present) {
      spec = pending_;
    }
    pending_ = {};
    add_bond(from, to, spec, at);
  }

  void add_bond(int from, int to, const BondSpec& spec, std::size_t at) {
    const auto key = std::minmax(from, to);
    if (!bond_keys_.insert(key).second) {
      fail("duplicate bond between the same atoms", at);
    }
    if (spec.reversed) {
      std::swap(from, to);
    }
    raw_bonds_.push_back({from, to, spec, at});
  }

  void add_atom(Atom atom, std::size_t at) {
    atoms_.push_back(atom);
    offsets_.push_back(at);
    const int idx = static_cast<int>(atoms_.size()) - 1;
    if (prev_ >= 0) {
      add_bond(prev_, idx, pending_, pending_.present ? pending_.offset : at);
      pending_ = {};
    }
    prev_ = idx;
  }

  Atom parse_organic() {
    const std::size_t at = pos_;
    const char        c  = peek();
    Atom              atom;
    if (c == '*') {
      throw SmilesError(SmilesErrorKind::kUnsupported, at, "wildcard atom '*'");
    }
    if (c == 'C' && peek(1) == 'l') {
      atom.atomic_number = 17;
      pos_ += 2;
      return atom;
    }
    if (c == 'B' && peek(1) == 'r') {
      atom.atomic_number = 35;
      pos_ += 2;
      return atom;
    }
    static const std::map<char, int> upper = {{'B', 5}, {'C', 6}, {'N', 7}, {'O', 8},
                                              {'P', 15}, {'S', 16}, {'F', 9}, {'I', 53}};
    static const std::map<char, int> lower = {{'b', 5}, {'c', 6}, {'n', 7}, {'o', 8}, {'p', 15}, {'s', 16}};
    if (auto it = upper.find(c); it != upper.end()) {
      atom.atomic_number = it->second;
      ++pos_;
      return atom;
    }
    if (auto it = lower.find(c); it != lower.end()) {
      atom.atomic_number = it->second;
      atom.aromatic      = true;
      ++pos_;
      return atom;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      fail(std::string("element '") + c + "' must be written in brackets", at);
    }
    fail(std::string("unexpected character '") + c + "'", at);
  }

  int read_number() {
    int value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      ++pos_;
    }
    return value;
  }

  Atom parse_bracket() {
    const std::size_t open = pos_;
    ++pos_;
    Atom atom;
    atom.bracket = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      atom.isotope = read_number();
    }
    const std::size_t sym_at = pos_;
    const char        c      = peek();
    if (c == '*') {
      throw SmilesError(SmilesErrorKind::kUnsupported, sym_at, "wildcard atom '*'");
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::optional<int> z;
      if (std::islower(static_cast<unsigned char>(peek(1)))) {
        z = elements::from_symbol(s_.substr(pos_, 2));
        if (z) {
          pos_ += 2;
        }
      }
      if (!z) {
        z = elements::from_symbol(s_.substr(pos_, 1));
        if (!z) {
          fail("unknown element", sym_at);
        }
        ++pos_;
      }
      atom.atomic_number = *z;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      static const std::pair<const char*, int> aromatic[] = {{"se", 34}, {"as", 33}, {"te", 52}, {"b", 5},
                                                             {"c", 6},   {"n", 7},   {"o", 8},   {"p", 15},
                                                             {"s", 16}};
      bool found = false;
      for (const auto& [sym, z] : aromatic) {
        const std::string_view sv(sym);
        if (s_.substr(pos_, sv.size()) == sv) {
          atom.atomic_number = z;
          atom.aromatic      = true;
          pos_ += sv.size();
          found = true;
          break;
        }
      }
      if (!found) {
        fail("unknown aromatic element", sym_at);
      }
    } else {
      fail("missing element symbol", sym_at);
    }
    if (peek() == '@') {
      ++pos_;
      if (peek() == '@') {
        ++pos_;
      } else if (std::isupper(static_cast<unsigned char>(peek())) && std::isupper(static_cast<unsigned char>(peek(1)))) {
        const std::string_view cls = s_.substr(pos_, 2);
        if (cls != "TH" && cls != "AL" && cls != "SP" && cls != "TB" && cls != "OH") {
          fail("unknown chirality class", pos_);
        }
        pos_ += 2;
        read_number();
      }
    }
    if (peek() == 'H') {
      ++pos_;
      atom.explicit_h = std::isdigit(static_cast<unsigned char>(peek())) ? read_number() : 1;
    }
    if (peek() == '+' || peek() == '-') {
      const char sign = peek();
      const int  unit = sign == '+' ? 1 : -1;
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        atom.formal_charge = unit * read_number();
      } else {
        int n = 1;
        while (peek() == sign) {
          ++n;
          ++pos_;
        }
        atom.formal_charge = unit * n;
      }
    }
    if (peek() == ':') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("atom class needs digits", pos_);
      }
      read_number();
    }
    if (peek() != ']') {
      fail("unterminated bracket atom", open);
    }
    ++pos_;
    return atom;
  }

  ParsedSmiles build() {
    std::vector<Bond> bonds;
    bonds.reserve(raw_bonds_.size());
    std::vector<bool> implicit_aromatic;
    for (const RawBond& rb : raw_bonds_) {
      Bond b;
      b.begin = rb.from;
      b.end   = rb.to;
      b.other = rb.spec.other;
      if (rb.spec.present) {
        b.order = rb.spec.other == OtherBond::kNone ? rb.spec.order : BondOrder::kSingle;
      } else if (atoms_[rb.from].aromatic && atoms_[rb.to].aromatic) {
        b.order = BondOrder::kAromatic;
      }
      bonds.push_back(b);
    }
    // Aromatic bonds that are not in any ring (biaryl links) are single bonds.
    std::vector<std::pair<int, int>> edges;
    for (const Bond& b : bonds) {
      edges.emplace_back(b.begin, b.end);
    }
    const auto bridges = find_bridges(static_cast<int>(atoms_.size()), edges);
    for (std::size_t i = 0; i < bonds.size(); ++i) {
      if (bridges[i] && bonds[i].order == BondOrder::kAromatic) {
        bonds[i].order = BondOrder::kSingle;
      }
    }
    std::vector<int> valence(atoms_.size(), 0);
    for (const Bond& b : bonds) {
      const int v = b.is_other() ? 0 : (b.order == BondOrder::kAromatic ? 1 : static_cast<int>(b.order));
      valence[b.begin] += v;
      valence[b.end] += v;
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      Atom& a = atoms_[i];
      if (a.bracket) {
        continue;
      }
      const int h = organic_implicit_hydrogens(a.atomic_number, a.aromatic, valence[i]);
      if (h < 0) {
        throw SmilesError(SmilesErrorKind::kValence, offsets_[i],
                          "valence " + std::to_string(valence[i]) + " not allowed for " +
                            std::string(elements::symbol(a.atomic_number)));
      }
      a.implicit_h = h;
    }
    try {
      return {Molecule(std::move(atoms_), std::move(bonds)), std::move(warnings_)};
    } catch (const MoleculeError& e) {
      const std::size_t at = e.atom() >= 0 ? offsets_[e.atom()] : 0;
      SmilesErrorKind   kind = SmilesErrorKind::kSyntax;
      if (e.kind() == MoleculeError::Kind::kValence) {
        kind = SmilesErrorKind::kValence;
      } else if (e.kind() == MoleculeError::Kind::kAromaticity) {
        kind = SmilesErrorKind::kAromaticity;
      }
      throw SmilesError(kind, at, e.what());
    }
  }

  std::string_view              s_;
  std::size_t                   pos_  = 0;
  int                           prev_ = -1;
  BondSpec                      pending_;
  std::vector<int>              branches_;
  std::vector<std::size_t>      branch_offsets_;
  std::map<int, RingOpen>       rings_;
  std::set<std::pair<int, int>> bond_keys_;
  std::vector<Atom>             atoms_;
  std::vector<std::size_t>      offsets_;
  std::vector<RawBond>          raw_bonds_;
  std::vector<ParseWarning>     warnings_;
};

// --- writer ---

bool plain_aromatic_symbol(int z) {
  return z == 5 || z == 6 || z == 7 || z == 8 || z == 15 || z == 16;
}

std::string atom_token(const Molecule& mol, int i) {
  const Atom& a = mol.atom(i);
  const auto  sym = elements::symbol(a.atomic_number);
  std::string name(sym);
  if (a.aromatic) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
  }
  bool plain = !a.bracket && elements::is_organic_subset(a.atomic_number) && a.formal_charge == 0 && !a.isotope &&
               (!a.aromatic || plain_aromatic_symbol(a.atomic_number));
  if (plain) {
    int valence = 0;
    for (const Neighbor& n : mol.neighbors(i)) {
      const Bond& b = mol.bond(n.bond);
      valence += b.is_other() ? 0 : (b.order == BondOrder::kAromatic ? 1 : static_cast<int>(b.order));
    }
    plain = organic_implicit_hydrogens(a.atomic_number, a.aromatic, valence) == a.hydrogen_count();
  }
  if (plain) {
    return name;
  }
  std::string out = "[";
  if (a.isotope) {
    out += std::to_string(*a.isotope);
  }
  out += name;
  const int h = a.hydrogen_count();
  if (h > 0) {
    out += 'H';
    if (h > 1) {
      out += std::to_string(h);
    }
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    const int mag = std::abs(a.formal_charge);
    if (mag > 1) {
      out += std::to_string(mag);
    }
  }
  out += ']';
  return out;
}

std::string bond_token(const Molecule& mol, int bond, int from) {
  const Bond& b = mol.bond(bond);
  if (b.other == OtherBond::kDative) {
    return b.begin == from ? "->" : "<-";
  }
  if (b.other == OtherBond::kQuadruple) {
    return "$";
  }
  switch (b.order) {
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return "";
    case BondOrder::kSingle:
      return mol.atom(b.begin).aromatic && mol.atom(b.end).aromatic ? "-" : "";
  }
  return "";
}

std::string ring_label(int d) {
  if (d < 10) {
    return std::to_string(d);
  }
  if (d < 100) {
    return "%" + std::to_string(d);
  }
  return "%(" + std::to_string(d) + ")";
}

}  // namespace

ParsedSmiles parse_smiles_with_warnings(std::string_view text) {
  return SmilesParser(text).run();
}

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text).run().molecule;
}

std::string write_smiles(const Molecule& mol) {
  const int n = mol.atom_count();
  // Pass 1: DFS spanning forest; non-tree bonds become ring closures opened at the earlier-visited atom.
  std::vector<int>              visit(n, -1);
  std::vector<std::vector<int>> children(n);  // bond ids of tree edges to children
  std::vector<std::vector<int>> opens(n);
  std::vector<std::vector<int>> closes(n);
  std::vector<bool>             bond_used(mol.bond_count(), false);
  std::vector<int>              roots;
  int                           counter = 0;
  for (int root = 0; root < n; ++root) {
    if (visit[root] >= 0) {
      continue;
    }
    roots.push_back(root);
    std::function<void(int)> dfs = [&](int v) {
      visit[v] = counter++;
      for (const Neighbor& nb : mol.neighbors(v)) {
        if (bond_used[nb.bond]) {
          continue;
        }
        bond_used[nb.bond] = true;
        if (visit[nb.atom] >= 0) {
          opens[nb.atom].push_back(nb.bond);
          closes[v].push_back(nb.bond);
        } else {
          children[v].push_back(nb.bond);
          dfs(nb.atom);
        }
      }
    };
    dfs(root);
  }

  // Pass 2: emit.
  std::string      out;
  std::vector<int> digit_of_bond(mol.bond_count(), 0);
  std::set<int>    free_digits;
  for (int d = 1; d < 1000; ++d) {
    free_digits.insert(d);
  }
  std::function<void(int)> emit = [&](int v) {
    out += atom_token(mol, v);
    std::vector<int> released;
    for (int b : closes[v]) {
      out += ring_label(digit_of_bond[b]);
      released.push_back(digit_of_bond[b]);
    }
    for (int b : opens[v]) {
      const int d = *free_digits.begin();
      free_digits.erase(free_digits.begin());
      digit_of_bond[b] = d;
      out += bond_token(mol, b, v);
      out += ring_label(d);
    }
    for (int d : released) {
      free_digits.insert(d);
    }
    for (std::size_t k = 0; k < children[v].size(); ++k) {
      const int  b    = children[v][k];
      const bool last = k + 1 == children[v].size();
      if (!last) {
        out += '(';
      }
      out += bond_token(mol, b, v);
      emit(mol.bond(b).neighbor(v));
      if (!last) {
        out += ')';
      }
    }
  };
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (r > 0) {
      out += '.';
    }
    emit(roots[r]);
  }
  return out;
}

}  // namespace beetox
