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


#include "beetox/fingerprints.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <queue>
#include <set>

#include "beetox/error.hpp"
#include "beetox/parallel.hpp"

namespace beetox {

namespace {

constexpr int kAtomCountLength = 89;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  return stable_hash(std::span<const std::uint64_t>(words.begin(), words.size()));
}

std::uint64_t word(int v) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(v));
}

// Feature family tags keep identifiers of different kinds apart.
enum : std::uint64_t { kTagEcfpAtom = 1, kTagEcfpIter, kTagPair, kTagTorsion, kTagPath };

int bond_code(const Bond& b) {
  return b.is_other() ? 4 + static_cast<int>(b.other) : static_cast<int>(b.order);
}

bool heavy(const Molecule& m, int i) {
  return m.atom(i).atomic_number != 1;
}

// Atom invariant shared by the atom pair, torsion and path kinds.
std::uint64_t element_code(const Molecule& m, int i) {
  const Atom& a = m.atom(i);
  return hash_words({word(a.atomic_number), word(m.heavy_degree(i)), word(a.aromatic ? 1 : 0)});
}

using AtomSet = std::vector<std::uint64_t>;

std::vector<std::uint64_t> ecfp_ids(const Molecule& m, int radius, std::vector<EcfpEnvironment>* envs) {
  const int                  n = m.atom_count();
  const std::size_t          words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> ids(n);
  std::vector<AtomSet>       sets(n, AtomSet(words, 0));
  for (int i = 0; i < n; ++i) {
    const Atom& a = m.atom(i);
    ids[i]        = hash_words({kTagEcfpAtom, word(a.atomic_number), word(m.heavy_degree(i)), word(a.formal_charge),
                                word(m.total_hydrogens(i)), word(a.in_ring ? 1 : 0)});
    sets[i][i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::set<AtomSet>          seen;
  std::vector<std::uint64_t> out;
  for (int r = 0; r <= radius; ++r) {
    if (r > 0) {
      std::vector<std::uint64_t> next(n);
      std::vector<AtomSet>       next_sets = sets;
      std::vector<std::pair<std::uint64_t, std::uint64_t>> nbrs;
      for (int i = 0; i < n; ++i) {
        nbrs.clear();
        for (const Neighbor& nb : m.neighbors(i)) {
          nbrs.emplace_back(word(bond_code(m.bond(nb.bond))), ids[nb.atom]);
          for (std::size_t w = 0; w < words; ++w) {
            next_sets[i][w] |= sets[nb.atom][w];
          }
        }
        std::sort(nbrs.begin(), nbrs.end());
        std::vector<std::uint64_t> seq{kTagEcfpIter, word(r), ids[i]};
        for (const auto& [b, id] : nbrs) {
          seq.push_back(b);
          seq.push_back(id);
        }
        next[i] = stable_hash(seq);
      }
      ids.swap(next);
      sets.swap(next_sets);
    }
    // Among atoms sharing a new atom set, the smallest identifier represents it.
    std::map<AtomSet, int> best;
    for (int i = 0; i < n; ++i) {
      if (seen.count(sets[i])) {
        continue;
      }
      auto [it, inserted] = best.emplace(sets[i], i);
      if (!inserted && ids[i] < ids[it->second]) {
        it->second = i;
      }
    }
    for (int i = 0; i < n; ++i) {
      auto it = best.find(sets[i]);
      if (it != best.end() && it->second == i) {
        out.push_back(ids[i]);
        if (envs) {
          envs->push_back({ids[i], r, i});
        }
      }
    }
    for (auto& [set, atom] : best) {
      seen.insert(set);
    }
  }
  return out;
}

std::vector<std::uint64_t> atom_pair_ids(const Molecule& m) {
  const int                  n = m.atom_count();
  std::vector<std::uint64_t> codes(n);
  for (int i = 0; i < n; ++i) {
    codes[i] = element_code(m, i);
  }
  std::vector<std::uint64_t> out;
  std::vector<int>           dist(n);
  std::queue<int>            q;
  for (int s = 0; s < n; ++s) {
    if (!heavy(m, s)) {
      continue;
    }
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const Neighbor& nb : m.neighbors(u)) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[u] + 1;
          q.push(nb.atom);
        }
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (dist[t] > 0 && heavy(m, t)) {
        out.push_back(hash_words({kTagPair, std::min(codes[s], codes[t]), std::max(codes[s], codes[t]), word(dist[t])}));
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> torsion_ids(const Molecule& m) {
  std::vector<std::uint64_t> out;
  std::vector<int>           path;
  std::vector<int>           bonds;
  const auto emit = [&] {
    std::vector<std::uint64_t> fwd{kTagTorsion};
    std::vector<std::uint64_t> rev{kTagTorsion};
    for (std::size_t k = 0; k < path.size(); ++k) {
      fwd.push_back(element_code(m, path[k]));
      rev.push_back(element_code(m, path[path.size() - 1 - k]));
      if (k < bonds.size()) {
        fwd.push_back(word(bond_code(m.bond(bonds[k]))));
        rev.push_back(word(bond_code(m.bond(bonds[bonds.size() - 1 - k]))));
      }
    }
    out.push_back(stable_hash(std::min(fwd, rev)));
  };
  const auto extend = [&](auto&& self) -> void {
    if (path.size() == 4) {
      if (path.front() < path.back()) {
        emit();
      }
      return;
    }
    for (const Neighbor& nb : m.neighbors(path.back())) {
      if (!heavy(m, nb.atom) || std::find(path.begin(), path.end(), nb.atom) != path.end()) {
        continue;
      }
      path.push_back(nb.atom);
      bonds.push_back(nb.bond);
      self(self);
      path.pop_back();
      bonds.pop_back();
    }
  };
  for (int s = 0; s < m.atom_count(); ++s) {
    if (heavy(m, s)) {
      path = {s};
      bonds.clear();
      extend(extend);
    }
  }
  return out;
}

// Connected bond subgraphs enumerated with the ESU scheme on the line graph, so each subset is visited once.
class PathEnumerator {
 public:
  PathEnumerator(const Molecule& m, int max_bonds) : m_(m), max_(max_bonds) {
    for (int b = 0; b < m.bond_count(); ++b) {
      const Bond& bond = m.bond(b);
      if (heavy(m, bond.begin) && heavy(m, bond.end)) {
        index_.push_back(b);
      }
    }
    local_.assign(m.bond_count(), -1);
    for (std::size_t k = 0; k < index_.size(); ++k) {
      local_[index_[k]] = static_cast<int>(k);
    }
    adj_.resize(index_.size());
    for (std::size_t k = 0; k < index_.size(); ++k) {
      const Bond& bond = m.bond(index_[k]);
      for (int end : {bond.begin, bond.end}) {
        for (const Neighbor& nb : m.neighbors(end)) {
          const int other = local_[nb.bond];
          if (other >= 0 && other != static_cast<int>(k)) {
            adj_[k].push_back(other);
          }
        }
      }
    }
    in_sub_.assign(index_.size(), 0);
    near_.assign(index_.size(), 0);
    subgraph_degree_.assign(m.atom_count(), 0);
  }

  std::vector<std::uint64_t> run() {
    for (std::size_t v = 0; v < index_.size(); ++v) {
      std::vector<int> ext;
      for (int u : adj_[v]) {
        if (u > static_cast<int>(v) && std::find(ext.begin(), ext.end(), u) == ext.end()) {
          ext.push_back(u);
        }
      }
      add(static_cast<int>(v));
      extend(ext, static_cast<int>(v));
      remove(static_cast<int>(v));
    }
    return std::move(out_);
  }

 private:
  void add(int k) {
    sub_.push_back(k);
    in_sub_[k] = 1;
    ++near_[k];
    for (int u : adj_[k]) {
      ++near_[u];
    }
    const Bond& b = m_.bond(index_[k]);
    ++subgraph_degree_[b.begin];
    ++subgraph_degree_[b.end];
  }

  void remove(int k) {
    sub_.pop_back();
    in_sub_[k] = 0;
    --near_[k];
    for (int u : adj_[k]) {
      --near_[u];
    }
    const Bond& b = m_.bond(index_[k]);
    --subgraph_degree_[b.begin];
    --subgraph_degree_[b.end];
  }

  void extend(std::vector<int> ext, int root) {
    emit();
    if (static_cast<int>(sub_.size()) == max_) {
      return;
    }
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      std::vector<int> next = ext;
      for (int u : adj_[w]) {
        if (u > root && near_[u] == 0 && std::find(next.begin(), next.end(), u) == next.end()) {
          next.push_back(u);
        }
      }
      add(w);
      extend(std::move(next), root);
      remove(w);
    }
  }

  void emit() {
    codes_.clear();
    for (int k : sub_) {
      const Bond&         b  = m_.bond(index_[k]);
      const std::uint64_t cu = atom_code(b.begin);
      const std::uint64_t cv = atom_code(b.end);
      codes_.push_back(hash_words({word(bond_code(b)), std::min(cu, cv), std::max(cu, cv)}));
    }
    std::sort(codes_.begin(), codes_.end());
    codes_.insert(codes_.begin(), {kTagPath, word(static_cast<int>(sub_.size()))});
    out_.push_back(stable_hash(codes_));
  }

  std::uint64_t atom_code(int atom) const {
    const Atom& a = m_.atom(atom);
    return hash_words({word(a.atomic_number), word(a.aromatic ? 1 : 0), word(subgraph_degree_[atom])});
  }

  const Molecule&               m_;
  int                           max_;
  std::vector<int>              index_;
  std::vector<int>              local_;
  std::vector<std::vector<int>> adj_;
  std::vector<int>              sub_;
  std::vector<char>             in_sub_;
  // Count of subgraph bonds equal or adjacent to each bond.
  std::vector<int>              near_;
  std::vector<int>              subgraph_degree_;
  std::vector<std::uint64_t>    codes_;
  std::vector<std::uint64_t>    out_;
};

bool hashed(FingerprintKind k) {
  return k != FingerprintKind::kSubstructure && k != FingerprintKind::kAtomCounts;
}

int parse_int(std::string_view key, std::string_view v) {
  int value = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("fingerprint spec: " + std::string(key) + " must be an integer, got '" + std::string(v) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "True") return true;
  if (v == "0" || v == "false" || v == "False") return false;
  throw ConfigError("fingerprint spec: " + std::string(key) + " must be a boolean, got '" + std::string(v) + "'");
}

}  // namespace

std::uint64_t stable_hash(std::span<const std::uint64_t> words) {
  std::uint64_t h = splitmix(static_cast<std::uint64_t>(kFingerprintHashVersion));
  for (std::uint64_t w : words) {
    h = splitmix(h ^ splitmix(w));
  }
  return splitmix(h ^ words.size());
}

std::string_view to_string(FingerprintKind kind) {
  switch (kind) {
    case FingerprintKind::kEcfp: return "ecfp";
    case FingerprintKind::kAtomPair: return "atom_pair";
    case FingerprintKind::kTopologicalTorsion: return "topological_torsion";
    case FingerprintKind::kBranchedPath: return "branched_path";
    case FingerprintKind::kSubstructure: return "substructure";
    case FingerprintKind::kAtomCounts: return "atom_counts";
  }
  return "unknown";
}

std::optional<FingerprintKind> fingerprint_kind_from_string(std::string_view name) {
  for (FingerprintKind k : {FingerprintKind::kEcfp, FingerprintKind::kAtomPair, FingerprintKind::kTopologicalTorsion,
                            FingerprintKind::kBranchedPath, FingerprintKind::kSubstructure,
                            FingerprintKind::kAtomCounts}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  return std::nullopt;
}

int FingerprintSpec::resolved_fp_size() const {
  return fp_size.value_or(2048);
}

int FingerprintSpec::resolved_radius() const {
  return radius.value_or(2);
}

int FingerprintSpec::resolved_max_path() const {
  return max_path.value_or(7);
}

bool FingerprintSpec::resolved_count() const {
  return count.value_or(kind == FingerprintKind::kAtomCounts);
}

int FingerprintSpec::length() const {
  if (kind == FingerprintKind::kAtomCounts) {
    return kAtomCountLength;
  }
  if (kind == FingerprintKind::kSubstructure) {
    return patterns ? static_cast<int>(patterns->patterns.size()) : 0;
  }
  return resolved_fp_size();
}

std::string FingerprintSpec::to_string() const {
  std::string s(beetox::to_string(kind));
  s += ":count=" + std::string(resolved_count() ? "1" : "0");
  if (hashed(kind)) {
    s += ",fp_size=" + std::to_string(resolved_fp_size());
  }
  if (kind == FingerprintKind::kBranchedPath) {
    s += ",max_path=" + std::to_string(resolved_max_path());
  }
  if (kind == FingerprintKind::kSubstructure) {
    s += ",patterns=" + pattern_file;
  }
  if (kind == FingerprintKind::kEcfp) {
    s += ",radius=" + std::to_string(resolved_radius());
  }
  return s;
}

void validate(const FingerprintSpec& spec) {
  const std::string name(to_string(spec.kind));
  if (spec.fp_size) {
    if (!hashed(spec.kind)) {
      throw ConfigError("fingerprint " + name + ": fp_size does not apply");
    }
    const int s = *spec.fp_size;
    if (s != 256 && s != 512 && s != 1024 && s != 2048) {
      throw ConfigError("fingerprint " + name + ": fp_size must be one of 256, 512, 1024, 2048");
    }
  }
  if (spec.radius) {
    if (spec.kind != FingerprintKind::kEcfp) {
      throw ConfigError("fingerprint " + name + ": radius applies to ecfp only");
    }
    if (*spec.radius < 1 || *spec.radius > 4) {
      throw ConfigError("fingerprint ecfp: radius must be in 1..4");
    }
  }
  if (spec.max_path) {
    if (spec.kind != FingerprintKind::kBranchedPath) {
      throw ConfigError("fingerprint " + name + ": max_path applies to branched_path only");
    }
    if (*spec.max_path < 5 || *spec.max_path > 9) {
      throw ConfigError("fingerprint branched_path: max_path must be in 5..9");
    }
  }
  if (spec.kind == FingerprintKind::kSubstructure) {
    if (!spec.patterns) {
      throw ConfigError("fingerprint substructure: no pattern set loaded");
    }
  } else if (spec.patterns || !spec.pattern_file.empty()) {
    throw ConfigError("fingerprint " + name + ": patterns apply to substructure only");
  }
}

FingerprintSpec parse_fingerprint_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view kind_name = text.substr(0, colon);
  const auto kind = fingerprint_kind_from_string(kind_name);
  if (!kind) {
    throw ConfigError("unknown fingerprint kind '" + std::string(kind_name) + "'");
  }
  FingerprintSpec spec;
  spec.kind = *kind;
  std::string_view rest = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("fingerprint spec: expected key=value, got '" + std::string(item) + "'");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "fp_size") {
      spec.fp_size = parse_int(key, value);
    } else if (key == "radius") {
      spec.radius = parse_int(key, value);
    } else if (key == "max_path") {
      spec.max_path = parse_int(key, value);
    } else if (key == "count") {
      spec.count = parse_bool(key, value);
    } else if (key == "patterns") {
      spec.pattern_file = std::string(value);
      spec.patterns = std::make_shared<const PatternSet>(load_pattern_file(spec.pattern_file));
    } else {
      throw ConfigError("fingerprint spec: unknown key '" + std::string(key) + "'");
    }
  }
  validate(spec);
  return spec;
}

std::vector<EcfpEnvironment> ecfp_environments(const Molecule& mol, int radius) {
  std::vector<EcfpEnvironment> envs;
  ecfp_ids(mol, radius, &envs);
  return envs;
}

std::vector<std::uint64_t> feature_identifiers(const Molecule& mol, const FingerprintSpec& spec) {
  switch (spec.kind) {
    case FingerprintKind::kEcfp: return ecfp_ids(mol, spec.resolved_radius(), nullptr);
    case FingerprintKind::kAtomPair: return atom_pair_ids(mol);
    case FingerprintKind::kTopologicalTorsion: return torsion_ids(mol);
    case FingerprintKind::kBranchedPath: return PathEnumerator(mol, spec.resolved_max_path()).run();
    default: throw ConfigError("fingerprint " + std::string(to_string(spec.kind)) + " has no hashed identifiers");
  }
}

FingerprintVector compute_fingerprint(const Molecule& mol, const FingerprintSpec& spec) {
  validate(spec);
  FingerprintVector fp{std::vector<std::uint32_t>(spec.length(), 0), spec};
  if (spec.kind == FingerprintKind::kAtomCounts) {
    for (const Atom& a : mol.atoms()) {
      if (a.atomic_number >= 1 && a.atomic_number <= kAtomCountLength) {
        ++fp.values[a.atomic_number - 1];
      }
    }
  } else if (spec.kind == FingerprintKind::kSubstructure) {
    const auto& patterns = spec.patterns->patterns;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      fp.values[k] = static_cast<std::uint32_t>(spec.resolved_count() ? match_count(patterns[k].pattern, mol)
                                                                         : (match_exists(patterns[k].pattern, mol) ? 1 : 0));
    }
  } else {
    const auto size = static_cast<std::uint64_t>(spec.resolved_fp_size());
    for (std::uint64_t id : feature_identifiers(mol, spec)) {
      ++fp.values[id % size];
    }
  }
  if (!spec.resolved_count()) {
    for (auto& v : fp.values) {
      v = v > 0 ? 1 : 0;
    }
  }
  return fp;
}

std::vector<FingerprintVector> compute_fingerprints(std::span<const Molecule> mols, const FingerprintSpec& spec) {
  validate(spec);
  std::vector<FingerprintVector> out(mols.size());
  parallel_for(mols.size(), [&](std::size_t i) { out[i] = compute_fingerprint(mols[i], spec); });
  return out;
}

FeatureMatrix fingerprint_matrix(std::span<const FingerprintVector> fps, std::vector<std::string> ids) {
  if (ids.size() != fps.size()) {
    throw ConfigError("fingerprint_matrix: id count does not match vector count");
  }
  FeatureMatrix m;
  m.type = FeatureMatrix::Type::kCount;
  m.ids  = std::move(ids);
  if (fps.empty()) {
    return m;
  }
  m.spec = fps.front().spec.to_string();
  m.cols = fps.front().values.size();
  m.values.reserve(fps.size() * m.cols);
  for (const FingerprintVector& fp : fps) {
    if (!(fp.spec == fps.front().spec)) {
      throw ConfigError("fingerprint_matrix: mixed specs");
    }
    m.values.insert(m.values.end(), fp.values.begin(), fp.values.end());
  }
  return m;
}

double tanimoto(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, bool count) {
  if (a.size() != b.size()) {
    throw ConfigError("tanimoto: vector lengths differ");
  }
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (count) {
      num += std::min(a[i], b[i]);
      den += std::max(a[i], b[i]);
    } else {
      num += (a[i] && b[i]) ? 1 : 0;
      den += (a[i] || b[i]) ? 1 : 0;
    }
  }
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

double tanimoto(const FingerprintVector& a, const FingerprintVector& b) {
  if (!(a.spec == b.spec)) {
    throw ConfigError("tanimoto: fingerprint specs differ (" + a.spec.to_string() + " vs " + b.spec.to_string() + ")");
  }
  return tanimoto(a.values, b.values, a.spec.resolved_count());
}

}  // namespace beetox
