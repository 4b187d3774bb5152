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

#include "beetox/molecule.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

#include "beetox/elements.hpp"

namespace beetox {

namespace {

bool contains(std::span<const int> values, int v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

// Valence contributed by a bond before kekulisation: aromatic bonds count as 1.
int base_order(const Bond& b) {
  if (b.is_other()) {
    return 0;
  }
  return b.order == BondOrder::kAromatic ? 1 : static_cast<int>(b.order);
}

using EdgeSet = std::vector<std::uint64_t>;

bool test_bit(const EdgeSet& s, int i) {
  return (s[i >> 6] >> (i & 63)) & 1u;
}

void flip_bit(EdgeSet& s, int i) {
  s[i >> 6] ^= std::uint64_t{1} << (i & 63);
}

int lowest_bit(const EdgeSet& s) {
  for (std::size_t w = 0; w < s.size(); ++w) {
    if (s[w] != 0) {
      return static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(s[w])));
    }
  }
  return -1;
}

}  // namespace

int organic_implicit_hydrogens(int atomic_number, bool aromatic, int valence_sum) {
  const auto allowed = elements::default_valences(atomic_number);
  if (allowed.empty()) {
    return 0;
  }
  int sum = valence_sum;
  if (aromatic && !contains(allowed, sum)) {
    sum += 1;
  }
  for (int v : allowed) {
    if (v >= sum) {
      return v - sum;
    }
  }
  return -1;
}

std::vector<bool> find_bridges(int n, std::span<const std::pair<int, int>> edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].push_back({edges[e].second, e});
    adj[edges[e].second].push_back({edges[e].first, e});
  }
  std::vector<bool> bridge(edges.size(), false);
  std::vector<int>  disc(n, -1);
  std::vector<int>  low(n, 0);
  int               timer = 0;
  struct Frame {
    int         v;
    int         parent_edge;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) {
      continue;
    }
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.next++];
        if (e == f.parent_edge) {
          continue;
        }
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent  = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > disc[parent.v]) {
            bridge[done.parent_edge] = true;
          }
        }
      }
    }
  }
  return bridge;
}

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds) : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  validate();
  build_adjacency();

  std::vector<std::pair<int, int>> edges;
  edges.reserve(bonds_.size());
  for (const Bond& b : bonds_) {
    edges.emplace_back(b.begin, b.end);
  }
  const auto bridges = find_bridges(atom_count(), edges);
  for (Atom& a : atoms_) {
    a.in_ring = false;
  }
  for (int i = 0; i < bond_count(); ++i) {
    bonds_[i].in_ring = !bridges[i];
    if (bonds_[i].in_ring) {
      atoms_[bonds_[i].begin].in_ring = true;
      atoms_[bonds_[i].end].in_ring   = true;
    }
  }
  for (int i = 0; i < atom_count(); ++i) {
    if (atoms_[i].aromatic && !atoms_[i].in_ring) {
      throw MoleculeError(MoleculeError::Kind::kAromaticity, i, "aromatic atom outside a ring");
    }
  }

  compute_fragments();
  compute_rings();
  kekulize();

  for (int i = 0; i < atom_count(); ++i) {
    const auto allowed = elements::allowed_valences(atoms_[i].atomic_number, atoms_[i].formal_charge);
    if (allowed.empty()) {
      continue;
    }
    const int v = total_valence(i);
    if (v > allowed.back()) {
      throw MoleculeError(MoleculeError::Kind::kValence, i,
                          "valence " + std::to_string(v) + " exceeds the maximum for " +
                            std::string(elements::symbol(atoms_[i].atomic_number)));
    }
  }
}

void Molecule::validate() const {
  for (int i = 0; i < atom_count(); ++i) {
    const Atom& a = atoms_[i];
    if (a.atomic_number < 1 || a.atomic_number > elements::kMaxAtomicNumber) {
      throw MoleculeError(MoleculeError::Kind::kTopology, i, "atomic number out of range");
    }
    if (a.explicit_h < 0 || a.implicit_h < 0) {
      throw MoleculeError(MoleculeError::Kind::kTopology, i, "negative hydrogen count");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const Bond& b : bonds_) {
    if (b.begin < 0 || b.end < 0 || b.begin >= atom_count() || b.end >= atom_count()) {
      throw MoleculeError(MoleculeError::Kind::kTopology, -1, "bond endpoint out of range");
    }
    if (b.begin == b.end) {
      throw MoleculeError(MoleculeError::Kind::kTopology, b.begin, "self-loop bond");
    }
    if (!seen.insert(std::minmax(b.begin, b.end)).second) {
      throw MoleculeError(MoleculeError::Kind::kTopology, b.end, "parallel bond");
    }
    if (b.order == BondOrder::kAromatic && !(atoms_[b.begin].aromatic && atoms_[b.end].aromatic)) {
      throw MoleculeError(MoleculeError::Kind::kAromaticity, b.end, "aromatic bond between non-aromatic atoms");
    }
  }
}

void Molecule::build_adjacency() {
  adj_offset_.assign(atoms_.size() + 1, 0);
  for (const Bond& b : bonds_) {
    ++adj_offset_[b.begin + 1];
    ++adj_offset_[b.end + 1];
  }
  std::partial_sum(adj_offset_.begin(), adj_offset_.end(), adj_offset_.begin());
  adj_.assign(adj_offset_.back(), Neighbor{0, 0});
  std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (int i = 0; i < bond_count(); ++i) {
    adj_[fill[bonds_[i].begin]++] = {bonds_[i].end, i};
    adj_[fill[bonds_[i].end]++]   = {bonds_[i].begin, i};
  }
}

void Molecule::compute_fragments() {
  fragment_.assign(atoms_.size(), -1);
  fragment_count_ = 0;
  for (int root = 0; root < atom_count(); ++root) {
    if (fragment_[root] >= 0) {
      continue;
    }
    std::vector<int> stack{root};
    fragment_[root] = fragment_count_;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Neighbor& n : neighbors(v)) {
        if (fragment_[n.atom] < 0) {
          fragment_[n.atom] = fragment_count_;
          stack.push_back(n.atom);
        }
      }
    }
    ++fragment_count_;
  }
}

void Molecule::compute_rings() {
  rings_.clear();
  ring_count_.assign(atoms_.size(), 0);
  smallest_ring_.assign(atoms_.size(), 0);
  const int n_bonds   = bond_count();
  const int rank      = n_bonds - atom_count() + fragment_count_;
  if (rank <= 0) {
    return;
  }
  const std::size_t words = (static_cast<std::size_t>(n_bonds) + 63) / 64;

  // Horton candidates: for every ring atom x and ring bond (u, v), the cycle formed by the BFS-tree paths x->u and
  // x->v plus the bond, kept when the two paths only share x.
  std::vector<std::pair<int, EdgeSet>> candidates;
  std::set<EdgeSet>                    unique;
  std::vector<int>                     dist(atoms_.size());
  std::vector<int>                     parent_bond(atoms_.size());
  for (int x = 0; x < atom_count(); ++x) {
    if (!atoms_[x].in_ring) {
      continue;
    }
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent_bond.begin(), parent_bond.end(), -1);
    std::queue<int> q;
    q.push(x);
    dist[x] = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const Neighbor& nb : neighbors(v)) {
        if (!bonds_[nb.bond].in_ring || dist[nb.atom] >= 0) {
          continue;
        }
        dist[nb.atom]        = dist[v] + 1;
        parent_bond[nb.atom] = nb.bond;
        q.push(nb.atom);
      }
    }
    for (int e = 0; e < n_bonds; ++e) {
      const Bond& b = bonds_[e];
      if (!b.in_ring || dist[b.begin] < 0 || parent_bond[b.begin] == e || parent_bond[b.end] == e) {
        continue;
      }
      std::vector<int> path_u{b.begin};
      for (int v = b.begin; v != x;) {
        v = bonds_[parent_bond[v]].neighbor(v);
        path_u.push_back(v);
      }
      std::vector<int> path_v{b.end};
      for (int v = b.end; v != x;) {
        v = bonds_[parent_bond[v]].neighbor(v);
        path_v.push_back(v);
      }
      std::set<int> on_u(path_u.begin(), path_u.end());
      int           shared = 0;
      for (int v : path_v) {
        shared += static_cast<int>(on_u.count(v));
      }
      if (shared != 1) {
        continue;
      }
      EdgeSet set(words, 0);
      flip_bit(set, e);
      for (int v = b.begin; v != x; v = bonds_[parent_bond[v]].neighbor(v)) {
        flip_bit(set, parent_bond[v]);
      }
      for (int v = b.end; v != x; v = bonds_[parent_bond[v]].neighbor(v)) {
        flip_bit(set, parent_bond[v]);
      }
      if (unique.insert(set).second) {
        candidates.emplace_back(static_cast<int>(path_u.size() + path_v.size() - 1), std::move(set));
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) {
      return a.first < b.first;
    }
    return a.second < b.second;
  });

  // Greedy independence test over GF(2).
  std::vector<std::pair<int, EdgeSet>> basis;  // (pivot, reduced row)
  for (const auto& [length, cycle] : candidates) {
    if (static_cast<int>(rings_.size()) == rank) {
      break;
    }
    EdgeSet reduced = cycle;
    for (const auto& [pivot, row] : basis) {
      if (test_bit(reduced, pivot)) {
        for (std::size_t w = 0; w < words; ++w) {
          reduced[w] ^= row[w];
        }
      }
    }
    const int pivot = lowest_bit(reduced);
    if (pivot < 0) {
      continue;
    }
    basis.emplace_back(pivot, std::move(reduced));

    // Walk the cycle to produce an ordered atom list.
    std::vector<int> ring_bonds;
    for (int e = 0; e < n_bonds; ++e) {
      if (test_bit(cycle, e)) {
        ring_bonds.push_back(e);
      }
    }
    std::vector<int> order{bonds_[ring_bonds[0]].begin};
    int              prev_bond = ring_bonds[0];
    int              current   = bonds_[ring_bonds[0]].end;
    while (current != order[0]) {
      order.push_back(current);
      for (int e : ring_bonds) {
        if (e != prev_bond && (bonds_[e].begin == current || bonds_[e].end == current)) {
          prev_bond = e;
          current   = bonds_[e].neighbor(current);
          break;
        }
      }
    }
    rings_.push_back(std::move(order));
  }
  for (const auto& ring : rings_) {
    const int size = static_cast<int>(ring.size());
    for (int a : ring) {
      ++ring_count_[a];
      if (smallest_ring_[a] == 0 || size < smallest_ring_[a]) {
        smallest_ring_[a] = size;
      }
    }
  }
}

void Molecule::kekulize() {
  for (Bond& b : bonds_) {
    b.kekule_order = base_order(b);
  }
  std::vector<bool> needs_pi(atoms_.size(), false);
  for (int i = 0; i < atom_count(); ++i) {
    const Atom& a = atoms_[i];
    if (!a.aromatic) {
      continue;
    }
    int sum = a.hydrogen_count();
    for (const Neighbor& nb : neighbors(i)) {
      sum += base_order(bonds_[nb.bond]);
    }
    const auto allowed = elements::allowed_valences(a.atomic_number, a.formal_charge);
    if (allowed.empty() || contains(allowed, sum)) {
      continue;
    }
    if (allowed.back() < sum + 1) {
      throw MoleculeError(MoleculeError::Kind::kAromaticity, i, "aromatic atom cannot take a double bond");
    }
    needs_pi[i] = true;
  }

  // Perfect matching over aromatic bonds joining atoms that need a pi bond. Backtracking, always expanding the
  // unmatched atom with the fewest free partners.
  std::vector<int> mate(atoms_.size(), -1);
  std::vector<int> pending;
  for (int i = 0; i < atom_count(); ++i) {
    if (needs_pi[i]) {
      pending.push_back(i);
    }
  }
  if (pending.empty()) {
    return;
  }
  auto partners = [&](int v) {
    std::vector<Neighbor> out;
    for (const Neighbor& nb : neighbors(v)) {
      if (bonds_[nb.bond].order == BondOrder::kAromatic && needs_pi[nb.atom] && mate[nb.atom] < 0) {
        out.push_back(nb);
      }
    }
    return out;
  };
  long                      budget = 2'000'000;
  std::function<bool(int)> solve  = [&](int remaining) -> bool {
    if (remaining == 0) {
      return true;
    }
    if (--budget < 0) {
      return false;
    }
    int         best       = -1;
    std::size_t best_count = 0;
    for (int v : pending) {
      if (mate[v] >= 0) {
        continue;
      }
      const std::size_t c = partners(v).size();
      if (best < 0 || c < best_count) {
        best       = v;
        best_count = c;
        if (c == 0) {
          return false;
        }
      }
    }
    for (const Neighbor& nb : partners(best)) {
      mate[best]    = nb.bond;
      mate[nb.atom] = nb.bond;
      if (solve(remaining - 2)) {
        return true;
      }
      mate[best]    = -1;
      mate[nb.atom] = -1;
    }
    return false;
  };
  if (!solve(static_cast<int>(pending.size()))) {
    throw MoleculeError(MoleculeError::Kind::kAromaticity, pending.front(), "cannot kekulize aromatic system");
  }
  for (int v : pending) {
    bonds_[mate[v]].kekule_order = 2;
  }
}

std::span<const Neighbor> Molecule::neighbors(int atom) const {
  return {adj_.data() + adj_offset_[atom], adj_.data() + adj_offset_[atom + 1]};
}

std::optional<int> Molecule::find_bond(int a, int b) const {
  for (const Neighbor& n : neighbors(a)) {
    if (n.atom == b) {
      return n.bond;
    }
  }
  return std::nullopt;
}

int Molecule::total_hydrogens(int atom) const {
  int h = atoms_[atom].hydrogen_count();
  for (const Neighbor& n : neighbors(atom)) {
    h += atoms_[n.atom].atomic_number == 1 ? 1 : 0;
  }
  return h;
}

int Molecule::heavy_degree(int atom) const {
  int d = 0;
  for (const Neighbor& n : neighbors(atom)) {
    d += atoms_[n.atom].atomic_number == 1 ? 0 : 1;
  }
  return d;
}

int Molecule::total_valence(int atom) const {
  int v = atoms_[atom].hydrogen_count();
  for (const Neighbor& n : neighbors(atom)) {
    v += bonds_[n.bond].kekule_order;
  }
  return v;
}

std::vector<std::vector<int>> Molecule::fragments() const {
  std::vector<std::vector<int>> out(fragment_count_);
  for (int i = 0; i < atom_count(); ++i) {
    out[fragment_[i]].push_back(i);
  }
  return out;
}

bool Molecule::in_ring_of_size(int atom, int size) const {
  for (const auto& ring : rings_) {
    if (static_cast<int>(ring.size()) == size && std::find(ring.begin(), ring.end(), atom) != ring.end()) {
      return true;
    }
  }
  return false;
}

int Molecule::ring_bond_count(int atom) const {
  int c = 0;
  for (const Neighbor& n : neighbors(atom)) {
    c += bonds_[n.bond].in_ring ? 1 : 0;
  }
  return c;
}

Molecule Molecule::permuted(std::span<const int> order) const {
  if (static_cast<int>(order.size()) != atom_count()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  std::vector<Atom> atoms(atoms_.size());
  for (int i = 0; i < atom_count(); ++i) {
    atoms[order[i]] = atoms_[i];
  }
  std::vector<Bond> bonds = bonds_;
  for (Bond& b : bonds) {
    b.begin = order[b.begin];
    b.end   = order[b.end];
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

Molecule Molecule::with_explicit_hydrogens() const {
  std::vector<Atom> atoms = atoms_;
  std::vector<Bond> bonds = bonds_;
  for (int i = 0; i < atom_count(); ++i) {
    const int h        = atoms[i].hydrogen_count();
    atoms[i].explicit_h = 0;
    atoms[i].implicit_h = 0;
    atoms[i].bracket    = true;
    for (int k = 0; k < h; ++k) {
      Atom hydrogen;
      hydrogen.atomic_number = 1;
      hydrogen.bracket       = true;
      atoms.push_back(hydrogen);
      Bond b;
      b.begin = i;
      b.end   = static_cast<int>(atoms.size()) - 1;
      bonds.push_back(b);
    }
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

RingMembership ring_membership(const Molecule& mol) {
  RingMembership out;
  out.atoms.resize(mol.atom_count());
  out.bonds.resize(mol.bond_count());
  for (int i = 0; i < mol.atom_count(); ++i) {
    out.atoms[i] = mol.atom(i).in_ring;
  }
  for (int i = 0; i < mol.bond_count(); ++i) {
    out.bonds[i] = mol.bond(i).in_ring;
  }
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

int bond_label(const Bond& b) {
  return b.is_other() ? 5 : static_cast<int>(b.order);
}

std::vector<std::uint64_t> refined_colors(const Molecule& m) {
  std::vector<std::uint64_t> color(m.atom_count());
  for (int i = 0; i < m.atom_count(); ++i) {
    const Atom& a = m.atom(i);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t v : {std::uint64_t(a.atomic_number), std::uint64_t(a.formal_charge + 64),
                            std::uint64_t(a.aromatic), std::uint64_t(m.total_hydrogens(i)),
                            std::uint64_t(m.degree(i))}) {
      h = mix(h, v);
    }
    color[i] = h;
  }
  for (int round = 0; round < 4; ++round) {
    std::vector<std::uint64_t> next(color.size());
    for (int i = 0; i < m.atom_count(); ++i) {
      std::vector<std::uint64_t> around;
      for (const Neighbor& n : m.neighbors(i)) {
        around.push_back(mix(color[n.atom], static_cast<std::uint64_t>(bond_label(m.bond(n.bond)))));
      }
      std::sort(around.begin(), around.end());
      std::uint64_t h = color[i];
      for (auto v : around) {
        h = mix(h, v);
      }
      next[i] = h;
    }
    color.swap(next);
  }
  return color;
}

}  // namespace

bool isomorphic(const Molecule& a, const Molecule& b) {
  if (a.atom_count() != b.atom_count() || a.bond_count() != b.bond_count()) {
    return false;
  }
  const auto ca = refined_colors(a);
  const auto cb = refined_colors(b);
  {
    auto sa = ca;
    auto sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      return false;
    }
  }
  // Visit atoms of a in BFS order so each new atom usually has a mapped neighbour.
  std::vector<int>  order;
  std::vector<bool> seen(a.atom_count(), false);
  for (int root = 0; root < a.atom_count(); ++root) {
    if (seen[root]) {
      continue;
    }
    std::queue<int> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (const Neighbor& n : a.neighbors(v)) {
        if (!seen[n.atom]) {
          seen[n.atom] = true;
          q.push(n.atom);
        }
      }
    }
  }
  std::vector<int> map_ab(a.atom_count(), -1);
  std::vector<int> map_ba(b.atom_count(), -1);
  long             budget = 5'000'000;

  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == order.size()) {
      return true;
    }
    if (--budget < 0) {
      return false;
    }
    const int v = order[k];
    for (int w = 0; w < b.atom_count(); ++w) {
      if (map_ba[w] >= 0 || cb[w] != ca[v]) {
        continue;
      }
      bool ok = true;
      for (const Neighbor& n : a.neighbors(v)) {
        const int mapped = map_ab[n.atom];
        if (mapped < 0) {
          continue;
        }
        const auto bond = b.find_bond(w, mapped);
        if (!bond || bond_label(b.bond(*bond)) != bond_label(a.bond(n.bond))) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        continue;
      }
      map_ab[v] = w;
      map_ba[w] = v;
      if (extend(k + 1)) {
        return true;
      }
      map_ab[v] = -1;
      map_ba[w] = -1;
    }
    return false;
  };
  return extend(0);
}

}  // namespace beetox
