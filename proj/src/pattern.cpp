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

#include "beetox/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "beetox/elements.hpp"

namespace beetox {

using Op = QueryNode::Op;

namespace {

QueryNode leaf(Op op, int value = 0) {
  QueryNode n;
  n.op    = op;
  n.value = value;
  return n;
}

QueryNode combine(Op op, std::vector<QueryNode> children) {
  if (children.size() == 1) {
    return std::move(children.front());
  }
  QueryNode n;
  n.op       = op;
  n.children = std::move(children);
  return n;
}

QueryNode element(int z, std::optional<bool> aromatic) {
  if (!aromatic) {
    return leaf(Op::kAtomicNumber, z);
  }
  return combine(Op::kAnd, {leaf(Op::kAtomicNumber, z), leaf(Op::kAromatic, *aromatic ? 1 : 0)});
}

bool is_bond_char(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '~' || c == '@' || c == '/' || c == '\\' || c == '!' ||
         c == '&' || c == ',' || c == ';';
}

class SmartsParser {
 public:
  explicit SmartsParser(std::string_view text) : s_(text) {}

  Pattern run() {
    if (s_.empty()) {
      fail("empty SMARTS", 0);
    }
    while (pos_ < s_.size()) {
      step();
    }
    if (pending_) {
      fail("bond without a following atom", pending_offset_);
    }
    if (!branches_.empty()) {
      fail("unclosed branch", s_.size());
    }
    if (!rings_.empty()) {
      fail("ring bond " + std::to_string(rings_.begin()->first) + " is never closed", rings_.begin()->second.offset);
    }
    return Pattern(std::string(s_), std::move(atoms_), std::move(bonds_));
  }

 private:
  struct RingOpen {
    int                      atom;
    std::optional<QueryNode> bond;
    std::size_t              offset;
  };

  char peek(std::size_t k = 0) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw SmartsError(SmartsErrorKind::kSyntax, at, msg);
  }
  [[noreturn]] void unsupported(const std::string& msg, std::size_t at) const {
    throw SmartsError(SmartsErrorKind::kUnsupported, at, msg);
  }

  void step() {
    const char        c  = peek();
    const std::size_t at = pos_;
    if (c == '$') {
      unsupported("recursive SMARTS", at);
    }
    if (c == '(') {
      if (prev_ < 0) {
        unsupported("component-level grouping", at);
      }
      branches_.push_back(prev_);
      ++pos_;
      return;
    }
    if (c == ')') {
      if (branches_.empty()) {
        fail("unmatched ')'", at);
      }
      if (pending_) {
        fail("bond without a following atom", pending_offset_);
      }
      prev_ = branches_.back();
      branches_.pop_back();
      ++pos_;
      return;
    }
    if (c == '.') {
      unsupported("disconnected pattern", at);
    }
    if (is_bond_char(c)) {
      if (prev_ < 0) {
        fail("bond without a preceding atom", at);
      }
      if (pending_) {
        fail("two bond expressions in a row", at);
      }
      pending_offset_ = at;
      pending_        = parse_bond_low();
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
      ring_bond();
      return;
    }
    QueryNode atom = c == '[' ? parse_bracket() : parse_bare_atom();
    atoms_.push_back(std::move(atom));
    const int idx = static_cast<int>(atoms_.size()) - 1;
    if (prev_ >= 0) {
      add_bond(prev_, idx, pending_ ? std::move(*pending_) : leaf(Op::kBondDefault), at);
      pending_.reset();
    }
    prev_ = idx;
  }

  void add_bond(int a, int b, QueryNode q, std::size_t at) {
    for (const PatternBond& pb : bonds_) {
      if ((pb.begin == a && pb.end == b) || (pb.begin == b && pb.end == a)) {
        fail("duplicate bond", at);
      }
    }
    bonds_.push_back({a, b, std::move(q)});
  }

  void ring_bond() {
    const std::size_t at = pos_;
    if (prev_ < 0) {
      fail("ring bond without a preceding atom", at);
    }
    int label = 0;
    if (peek() == '%') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())) || !std::isdigit(static_cast<unsigned char>(peek(1)))) {
        fail("'%' must be followed by two digits", at);
      }
      label = (peek() - '0') * 10 + (peek(1) - '0');
      pos_ += 2;
    } else {
      label = peek() - '0';
      ++pos_;
    }
    auto it = rings_.find(label);
    if (it == rings_.end()) {
      rings_[label] = {prev_, std::move(pending_), at};
      pending_.reset();
      return;
    }
    RingOpen open = std::move(it->second);
    rings_.erase(it);
    if (open.atom == prev_) {
      fail("ring bond closes on its own atom", at);
    }
    QueryNode q = open.bond ? std::move(*open.bond) : (pending_ ? std::move(*pending_) : leaf(Op::kBondDefault));
    pending_.reset();
    add_bond(open.atom, prev_, std::move(q), at);
  }

  // Bond expressions: ';' < ',' < '&'/implicit < '!'.
  QueryNode parse_bond_low() {
    std::vector<QueryNode> terms{parse_bond_or()};
    while (peek() == ';') {
      ++pos_;
      terms.push_back(parse_bond_or());
    }
    return combine(Op::kAnd, std::move(terms));
  }

  QueryNode parse_bond_or() {
    std::vector<QueryNode> terms{parse_bond_and()};
    while (peek() == ',') {
      ++pos_;
      terms.push_back(parse_bond_and());
    }
    return combine(Op::kOr, std::move(terms));
  }

  QueryNode parse_bond_and() {
    std::vector<QueryNode> terms{parse_bond_unary()};
    while (true) {
      if (peek() == '&') {
        ++pos_;
        terms.push_back(parse_bond_unary());
      } else if (peek() != ',' && peek() != ';' && is_bond_char(peek())) {
        terms.push_back(parse_bond_unary());
      } else {
        break;
      }
    }
    return combine(Op::kAnd, std::move(terms));
  }

  QueryNode parse_bond_unary() {
    if (peek() == '!') {
      ++pos_;
      QueryNode n;
      n.op = Op::kNot;
      n.children.push_back(parse_bond_unary());
      return n;
    }
    const std::size_t at = pos_;
    switch (peek()) {
      case '-':
      case '/':
      case '\\':
        ++pos_;
        return leaf(Op::kBondSingle);
      case '=':
        ++pos_;
        return leaf(Op::kBondDouble);
      case '#':
        ++pos_;
        return leaf(Op::kBondTriple);
      case ':':
        ++pos_;
        return leaf(Op::kBondAromatic);
      case '~':
        ++pos_;
        return leaf(Op::kTrue);
      case '@':
        ++pos_;
        return leaf(Op::kBondRing);
      default:
        fail("expected a bond primitive", at);
    }
  }

  QueryNode parse_bare_atom() {
    const std::size_t at = pos_;
    const char        c  = peek();
    if (c == '*') {
      ++pos_;
      return leaf(Op::kTrue);
    }
    if (c == 'a' || c == 'A') {
      ++pos_;
      return leaf(Op::kAromatic, c == 'a' ? 1 : 0);
    }
    if (c == 'C' && peek(1) == 'l') {
      pos_ += 2;
      return element(17, false);
    }
    if (c == 'B' && peek(1) == 'r') {
      pos_ += 2;
      return element(35, false);
    }
    static const std::map<char, int> upper = {{'B', 5}, {'C', 6},  {'N', 7},  {'O', 8},
                                              {'P', 15}, {'S', 16}, {'F', 9}, {'I', 53}};
    static const std::map<char, int> lower = {{'b', 5}, {'c', 6}, {'n', 7}, {'o', 8}, {'p', 15}, {'s', 16}};
    if (auto it = upper.find(c); it != upper.end()) {
      ++pos_;
      return element(it->second, false);
    }
    if (auto it = lower.find(c); it != lower.end()) {
      ++pos_;
      return element(it->second, true);
    }
    fail(std::string("unexpected character '") + c + "'", at);
  }

  QueryNode parse_bracket() {
    const std::size_t open = pos_;
    ++pos_;
    bracket_start_ = pos_;
    isotope_end_   = std::string_view::npos;
    QueryNode q    = parse_atom_low();
    if (peek() == ':') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("atom map needs digits", pos_);
      }
      read_number();
    }
    if (peek() != ']') {
      if (peek() == '\0') {
        fail("unterminated bracket atom", open);
      }
      fail(std::string("unexpected character '") + peek() + "' in bracket atom", pos_);
    }
    ++pos_;
    return q;
  }

  QueryNode parse_atom_low() {
    std::vector<QueryNode> terms{parse_atom_or()};
    while (peek() == ';') {
      ++pos_;
      terms.push_back(parse_atom_or());
    }
    return combine(Op::kAnd, std::move(terms));
  }

  QueryNode parse_atom_or() {
    std::vector<QueryNode> terms{parse_atom_and()};
    while (peek() == ',') {
      ++pos_;
      terms.push_back(parse_atom_and());
    }
    return combine(Op::kOr, std::move(terms));
  }

  bool starts_primitive(char c) const {
    return c != '\0' && c != ']' && c != ',' && c != ';' && c != '&' && c != ':';
  }

  QueryNode parse_atom_and() {
    std::vector<QueryNode> terms{parse_atom_unary()};
    while (true) {
      if (peek() == '&') {
        ++pos_;
        terms.push_back(parse_atom_unary());
      } else if (starts_primitive(peek())) {
        terms.push_back(parse_atom_unary());
      } else {
        break;
      }
    }
    return combine(Op::kAnd, std::move(terms));
  }

  QueryNode parse_atom_unary() {
    if (peek() == '!') {
      ++pos_;
      QueryNode n;
      n.op = Op::kNot;
      n.children.push_back(parse_atom_unary());
      return n;
    }
    return parse_atom_primitive();
  }

  int read_number() {
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      ++pos_;
    }
    return v;
  }

  std::optional<int> read_optional_number() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      return read_number();
    }
    return std::nullopt;
  }

  QueryNode parse_atom_primitive() {
    const std::size_t at = pos_;
    const char        c  = peek();
    if (c == '$') {
      unsupported("recursive SMARTS", at);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const bool leading = pos_ == bracket_start_;
      QueryNode  n       = leaf(Op::kIsotope, read_number());
      if (leading) {
        isotope_end_ = pos_;
      }
      return n;
    }
    if (c == '*') {
      ++pos_;
      return leaf(Op::kTrue);
    }
    if (c == '#') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("'#' needs an atomic number", at);
      }
      const int z = read_number();
      if (z < 1 || z > elements::kMaxAtomicNumber) {
        fail("atomic number out of range", at);
      }
      return leaf(Op::kAtomicNumber, z);
    }
    if (c == '+' || c == '-') {
      const int unit = c == '+' ? 1 : -1;
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        return leaf(Op::kCharge, unit * read_number());
      }
      int n = 1;
      while (peek() == c) {
        ++n;
        ++pos_;
      }
      return leaf(Op::kCharge, unit * n);
    }
    if (c == '@') {
      ++pos_;
      if (peek() == '@') {
        ++pos_;
      }
      return leaf(Op::kTrue);
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (std::islower(static_cast<unsigned char>(peek(1)))) {
        if (auto z = elements::from_symbol(s_.substr(pos_, 2))) {
          pos_ += 2;
          return element(*z, false);
        }
      }
      // "[H]", "[H+]", "[2H]": the hydrogen atom rather than the H-count primitive.
      if (c == 'H' && (pos_ == bracket_start_ || pos_ == isotope_end_) &&
          !std::isdigit(static_cast<unsigned char>(peek(1)))) {
        ++pos_;
        return leaf(Op::kAtomicNumber, 1);
      }
      switch (c) {
        case 'A':
          ++pos_;
          return leaf(Op::kAromatic, 0);
        case 'D':
          ++pos_;
          return leaf(Op::kDegree, read_optional_number().value_or(1));
        case 'H':
          ++pos_;
          return leaf(Op::kTotalH, read_optional_number().value_or(1));
        case 'R':
          ++pos_;
          return leaf(Op::kRingCount, read_optional_number().value_or(-1));
        case 'X':
          ++pos_;
          return leaf(Op::kConnectivity, read_optional_number().value_or(1));
        default:
          break;
      }
      if (auto z = elements::from_symbol(s_.substr(pos_, 1))) {
        ++pos_;
        return element(*z, false);
      }
      fail("unknown element", at);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      static const std::pair<const char*, int> aromatic[] = {{"se", 34}, {"as", 33}, {"te", 52}, {"c", 6}, {"n", 7},
                                                             {"o", 8},   {"s", 16},  {"p", 15},  {"b", 5}};
      for (const auto& [sym, z] : aromatic) {
        const std::string_view sv(sym);
        if (s_.substr(pos_, sv.size()) == sv) {
          pos_ += sv.size();
          return element(z, true);
        }
      }
      switch (c) {
        case 'a':
          ++pos_;
          return leaf(Op::kAromatic, 1);
        case 'h':
          ++pos_;
          return leaf(Op::kImplicitH, read_optional_number().value_or(-1));
        case 'r':
          ++pos_;
          return leaf(Op::kRingSize, read_optional_number().value_or(-1));
        case 'v':
          ++pos_;
          return leaf(Op::kValence, read_optional_number().value_or(1));
        case 'x':
          ++pos_;
          return leaf(Op::kRingConnectivity, read_optional_number().value_or(-1));
        default:
          break;
      }
      fail("unknown primitive", at);
    }
    fail(std::string("unexpected character '") + c + "'", at);
  }

  std::string_view                       s_;
  std::size_t                            pos_           = 0;
  std::size_t                            bracket_start_ = 0;
  std::size_t                            isotope_end_   = std::string_view::npos;
  int                                    prev_          = -1;
  std::optional<QueryNode>               pending_;
  std::size_t                            pending_offset_ = 0;
  std::vector<int>                       branches_;
  std::map<int, RingOpen>                rings_;
  std::vector<QueryNode>                 atoms_;
  std::vector<PatternBond>               bonds_;
};

}  // namespace

Pattern::Pattern(std::string source, std::vector<QueryNode> atoms, std::vector<PatternBond> bonds)
    : source_(std::move(source)), atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  adjacency_.resize(atoms_.size());
  for (int i = 0; i < bond_count(); ++i) {
    adjacency_[bonds_[i].begin].emplace_back(bonds_[i].end, i);
    adjacency_[bonds_[i].end].emplace_back(bonds_[i].begin, i);
  }
  // Connectivity check.
  if (!atoms_.empty()) {
    std::vector<bool> seen(atoms_.size(), false);
    std::vector<int>  stack{0};
    seen[0]   = true;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, b] : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count != atom_count()) {
      throw SmartsError(SmartsErrorKind::kUnsupported, 0, "disconnected pattern");
    }
  }
}

Pattern parse_smarts(std::string_view text) {
  return SmartsParser(text).run();
}

bool matches_atom(const QueryNode& q, const Molecule& mol, int atom) {
  const Atom& a = mol.atom(atom);
  switch (q.op) {
    case Op::kTrue:
      return true;
    case Op::kAnd:
      return std::all_of(q.children.begin(), q.children.end(),
                         [&](const QueryNode& c) { return matches_atom(c, mol, atom); });
    case Op::kOr:
      return std::any_of(q.children.begin(), q.children.end(),
                         [&](const QueryNode& c) { return matches_atom(c, mol, atom); });
    case Op::kNot:
      return !matches_atom(q.children.front(), mol, atom);
    case Op::kAtomicNumber:
      return a.atomic_number == q.value;
    case Op::kAromatic:
      return a.aromatic == (q.value == 1);
    case Op::kCharge:
      return a.formal_charge == q.value;
    case Op::kRingCount:
      return q.value < 0 ? a.in_ring : mol.ring_count(atom) == q.value;
    case Op::kRingSize:
      return q.value < 0 ? a.in_ring : mol.smallest_ring(atom) == q.value;
    case Op::kDegree:
      return mol.degree(atom) == q.value;
    case Op::kTotalH:
      return mol.total_hydrogens(atom) == q.value;
    case Op::kImplicitH:
      return q.value < 0 ? a.hydrogen_count() > 0 : a.hydrogen_count() == q.value;
    case Op::kConnectivity:
      return mol.degree(atom) + a.hydrogen_count() == q.value;
    case Op::kValence:
      return mol.total_valence(atom) == q.value;
    case Op::kRingConnectivity:
      return q.value < 0 ? mol.ring_bond_count(atom) > 0 : mol.ring_bond_count(atom) == q.value;
    case Op::kIsotope:
      return a.isotope.value_or(0) == q.value;
    default:
      return false;
  }
}

bool matches_bond(const QueryNode& q, const Molecule& mol, int bond) {
  const Bond& b = mol.bond(bond);
  switch (q.op) {
    case Op::kTrue:
      return true;
    case Op::kAnd:
      return std::all_of(q.children.begin(), q.children.end(),
                         [&](const QueryNode& c) { return matches_bond(c, mol, bond); });
    case Op::kOr:
      return std::any_of(q.children.begin(), q.children.end(),
                         [&](const QueryNode& c) { return matches_bond(c, mol, bond); });
    case Op::kNot:
      return !matches_bond(q.children.front(), mol, bond);
    case Op::kBondSingle:
      return b.order == BondOrder::kSingle && !b.is_other();
    case Op::kBondDouble:
      return b.order == BondOrder::kDouble;
    case Op::kBondTriple:
      return b.order == BondOrder::kTriple;
    case Op::kBondAromatic:
      return b.order == BondOrder::kAromatic;
    case Op::kBondRing:
      return b.in_ring;
    case Op::kBondDefault:
      return (b.order == BondOrder::kSingle && !b.is_other()) || b.order == BondOrder::kAromatic;
    default:
      return false;
  }
}

namespace {

// Enumerates embeddings; visit returns false to stop.
void enumerate(const Pattern& p, const Molecule& mol, const std::function<bool(const std::vector<int>&)>& visit,
               int anchor = -1) {
  const int np = p.atom_count();
  if (np == 0 || mol.atom_count() < np) {
    return;
  }
  if (anchor >= 0 && !matches_atom(p.atoms()[0], mol, anchor)) {
    return;
  }
  std::vector<std::vector<char>> atom_ok(np, std::vector<char>(mol.atom_count(), 0));
  for (int i = 0; i < np; ++i) {
    bool any = false;
    for (int a = 0; a < mol.atom_count(); ++a) {
      atom_ok[i][a] = matches_atom(p.atoms()[i], mol, a) ? 1 : 0;
      any           = any || atom_ok[i][a];
    }
    if (!any) {
      return;
    }
  }
  // BFS order over the pattern; parent[k] is an earlier pattern atom bonded to order[k].
  std::vector<int>  order{0};
  std::vector<int>  parent_bond{-1};
  std::vector<bool> seen(np, false);
  seen[0] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto [w, b] : p.neighbors(order[k])) {
      if (!seen[w]) {
        seen[w] = true;
        order.push_back(w);
        parent_bond.push_back(b);
      }
    }
  }
  std::vector<int>  map(np, -1);
  std::vector<char> used(mol.atom_count(), 0);
  bool              stop = false;

  std::function<void(int)> extend = [&](int k) {
    if (stop) {
      return;
    }
    if (k == np) {
      stop = !visit(map);
      return;
    }
    const int pi = order[k];
    auto      try_atom = [&](int a) {
      if (used[a] || !atom_ok[pi][a]) {
        return;
      }
      for (auto [w, b] : p.neighbors(pi)) {
        if (map[w] < 0) {
          continue;
        }
        const auto mb = mol.find_bond(a, map[w]);
        if (!mb || !matches_bond(p.bonds()[b].query, mol, *mb)) {
          return;
        }
      }
      map[pi] = a;
      used[a] = 1;
      extend(k + 1);
      map[pi] = -1;
      used[a] = 0;
    };
    if (k == 0) {
      if (anchor >= 0) {
        try_atom(anchor);
        return;
      }
      for (int a = 0; a < mol.atom_count() && !stop; ++a) {
        try_atom(a);
      }
    } else {
      const PatternBond& pb     = p.bonds()[parent_bond[k]];
      const int          parent = pb.begin == pi ? pb.end : pb.begin;
      for (const Neighbor& nb : mol.neighbors(map[parent])) {
        if (stop) {
          break;
        }
        try_atom(nb.atom);
      }
    }
  };
  extend(0);
}

}  // namespace

std::vector<std::vector<int>> find_matches(const Pattern& pattern, const Molecule& mol) {
  std::set<std::vector<int>>    seen;
  std::vector<std::vector<int>> out;
  enumerate(pattern, mol, [&](const std::vector<int>& m) {
    std::vector<int> key = m;
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) {
      out.push_back(m);
    }
    return true;
  });
  return out;
}

int match_count(const Pattern& pattern, const Molecule& mol) {
  std::set<std::vector<int>> seen;
  enumerate(pattern, mol, [&](const std::vector<int>& m) {
    std::vector<int> key = m;
    std::sort(key.begin(), key.end());
    seen.insert(std::move(key));
    return true;
  });
  return static_cast<int>(seen.size());
}

bool match_exists(const Pattern& pattern, const Molecule& mol) {
  bool found = false;
  enumerate(pattern, mol, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

bool match_at(const Pattern& pattern, const Molecule& mol, int atom) {
  bool found = false;
  enumerate(
    pattern, mol,
    [&](const std::vector<int>&) {
      found = true;
      return false;
    },
    atom);
  return found;
}

std::vector<bool> anchor_atoms(const Pattern& pattern, const Molecule& mol) {
  std::vector<bool> out(mol.atom_count(), false);
  enumerate(pattern, mol, [&](const std::vector<int>& m) {
    out[m[0]] = true;
    return true;
  });
  return out;
}

double PatternSet::coverage() const {
  return declared() == 0 ? 1.0 : static_cast<double>(patterns.size()) / static_cast<double>(declared());
}

PatternSet parse_pattern_text(std::string_view text, const std::string& source, bool lenient) {
  PatternSet         set;
  set.source = source;
  std::istringstream in{std::string(text)};
  std::string        line;
  std::size_t        line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected NAME<TAB>SMARTS");
    }
    std::string name   = line.substr(0, tab);
    std::string smarts = line.substr(tab + 1);
    while (!smarts.empty() && (smarts.back() == ' ' || smarts.back() == '\t')) {
      smarts.pop_back();
    }
    try {
      set.patterns.push_back({name, parse_smarts(smarts)});
    } catch (const SmartsError& e) {
      if (!lenient) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": " + name + ": " + e.what());
      }
      set.skipped.push_back({name, smarts, e.what()});
    }
  }
  return set;
}

PatternSet load_pattern_file(const std::string& path, bool lenient) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open pattern file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_pattern_text(buffer.str(), path, lenient);
}

}  // namespace beetox
