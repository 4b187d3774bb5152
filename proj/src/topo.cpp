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


#include "beetox/topo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "beetox/error.hpp"
#include "beetox/parallel.hpp"

namespace beetox {

namespace {

constexpr int kLtpBlocks    = 8;
constexpr int kMoltopBlocks = 3;

std::vector<int> component_sizes(const Molecule& mol) {
  std::vector<int> count(mol.fragment_count(), 0);
  for (int i = 0; i < mol.atom_count(); ++i) {
    ++count[mol.fragment_of(i)];
  }
  std::vector<int> out(mol.atom_count());
  for (int i = 0; i < mol.atom_count(); ++i) {
    out[i] = count[mol.fragment_of(i)];
  }
  return out;
}

// Sorted neighbour list; molecules have no multi-edges, so this is the open neighbourhood.
std::vector<int> open_neighbourhood(const Molecule& mol, int v) {
  std::vector<int> out;
  for (const Neighbor& nb : mol.neighbors(v)) {
    out.push_back(nb.atom);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int         n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double choose2(double n) {
  return n * (n - 1) / 2;
}

double bond_order_value(const Bond& b) {
  if (b.other == OtherBond::kQuadruple) {
    return 4.0;
  }
  if (b.is_other()) {
    return 1.0;
  }
  return b.order == BondOrder::kAromatic ? 1.5 : static_cast<double>(b.order);
}

void mean_sum_std(const std::vector<double>& xs, std::vector<double>& out) {
  double sum = 0;
  for (double x : xs) {
    sum += x;
  }
  const double mean = xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
  double       var  = 0;
  for (double x : xs) {
    var += (x - mean) * (x - mean);
  }
  const double sd = xs.empty() ? 0.0 : std::sqrt(var / static_cast<double>(xs.size()));
  out.push_back(mean);
  out.push_back(sum);
  out.push_back(sd);
}

}  // namespace

std::string TopoHistogramSpec::to_string() const {
  std::ostringstream s;
  s << "bins=" << bins << ",degree_max=" << degree_max;
  return s.str();
}

double fit_degree_range(std::span<const Molecule> mols) {
  int best = 1;
  for (const Molecule& m : mols) {
    for (int i = 0; i < m.atom_count(); ++i) {
      best = std::max(best, m.degree(i));
    }
  }
  return best;
}

void add_to_histogram(std::span<double> block, double value, double lo, double hi) {
  const int bins = static_cast<int>(block.size());
  int       bin  = 0;
  if (hi > lo) {
    // The offset keeps values on a bin edge stable against summation-order rounding.
    bin = static_cast<int>(std::floor((value - lo) / (hi - lo) * bins + 1e-9));
  }
  block[std::clamp(bin, 0, bins - 1)] += 1.0;
}

std::vector<int> vertex_degrees(const Molecule& mol) {
  std::vector<int> out(mol.atom_count());
  for (int i = 0; i < mol.atom_count(); ++i) {
    out[i] = mol.degree(i);
  }
  return out;
}

std::vector<double> edge_betweenness(const Molecule& mol) {
  const int           n = mol.atom_count();
  std::vector<double> ebc(mol.bond_count(), 0.0);
  std::vector<int>    dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<int>    order;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s]  = 0;
    sigma[s] = 1;
    order.push_back(s);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int u = order[k];
      for (const Neighbor& nb : mol.neighbors(u)) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[u] + 1;
          order.push_back(nb.atom);
        }
        if (dist[nb.atom] == dist[u] + 1) {
          sigma[nb.atom] += sigma[u];
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (const Neighbor& nb : mol.neighbors(w)) {
        if (dist[nb.atom] == dist[w] - 1) {
          const double c = sigma[nb.atom] / sigma[w] * (1.0 + delta[w]);
          ebc[nb.bond] += c;
          delta[nb.atom] += c;
        }
      }
    }
  }
  const std::vector<int> size = component_sizes(mol);
  for (int b = 0; b < mol.bond_count(); ++b) {
    // Each unordered pair was accumulated from both endpoints.
    ebc[b] = ebc[b] / 2.0 / choose2(size[mol.bond(b).begin]);
  }
  return ebc;
}

std::vector<double> jaccard_index(const Molecule& mol) {
  std::vector<double> out(mol.bond_count());
  for (int b = 0; b < mol.bond_count(); ++b) {
    const auto nu    = open_neighbourhood(mol, mol.bond(b).begin);
    const auto nv    = open_neighbourhood(mol, mol.bond(b).end);
    const int  inter = intersection_size(nu, nv);
    out[b]           = static_cast<double>(inter) / static_cast<double>(nu.size() + nv.size() - inter);
  }
  return out;
}

std::vector<double> local_degree_score(const Molecule& mol) {
  std::vector<double> out(mol.atom_count(), 1.0);
  for (int v = 0; v < mol.atom_count(); ++v) {
    int best = 0;
    for (const Neighbor& nb : mol.neighbors(v)) {
      best = std::max(best, mol.degree(nb.atom));
    }
    if (best > 0) {
      out[v] = static_cast<double>(mol.degree(v)) / best;
    }
  }
  return out;
}

std::vector<double> adjusted_rand_index(const Molecule& mol) {
  const std::vector<int> size = component_sizes(mol);
  std::vector<double>    out(mol.bond_count());
  for (int b = 0; b < mol.bond_count(); ++b) {
    const auto   nu = open_neighbourhood(mol, mol.bond(b).begin);
    const auto   nv = open_neighbourhood(mol, mol.bond(b).end);
    const double n  = size[mol.bond(b).begin];
    const double x  = static_cast<double>(nu.size());
    const double y  = static_cast<double>(nv.size());
    const double a  = intersection_size(nu, nv);
    const double cells[4] = {a, x - a, y - a, n - x - y + a};
    double index = 0;
    for (double c : cells) {
      index += choose2(c);
    }
    const double rows     = choose2(x) + choose2(n - x);
    const double cols     = choose2(y) + choose2(n - y);
    const double expected = rows * cols / choose2(n);
    const double maximum  = (rows + cols) / 2.0;
    if (maximum == expected) {
      // Degenerate partitions: identical partitions agree perfectly, anything else carries no signal.
      const bool same = nu == nv || (a == 0 && x + y == n);
      out[b]          = same ? 1.0 : 0.0;
    } else {
      out[b] = (index - expected) / (maximum - expected);
    }
  }
  return out;
}

std::vector<double> scan_similarity(const Molecule& mol) {
  std::vector<double> out(mol.bond_count());
  for (int b = 0; b < mol.bond_count(); ++b) {
    const int u  = mol.bond(b).begin;
    const int v  = mol.bond(b).end;
    auto      gu = open_neighbourhood(mol, u);
    auto      gv = open_neighbourhood(mol, v);
    gu.insert(std::lower_bound(gu.begin(), gu.end(), u), u);
    gv.insert(std::lower_bound(gv.begin(), gv.end(), v), v);
    out[b] = intersection_size(gu, gv) / std::sqrt(static_cast<double>(gu.size() * gv.size()));
  }
  return out;
}

TopoVector ltp_vector(const Molecule& mol, const TopoHistogramSpec& spec) {
  if (spec.bins < 2) {
    throw ConfigError("topo: bins must be at least 2");
  }
  const int           bins = spec.bins;
  const double        dmax = spec.degree_max;
  TopoVector          v{std::vector<double>(static_cast<std::size_t>(kLtpBlocks * bins), 0.0), TopoKind::kLtp, spec};
  const auto block = [&](int k) { return std::span<double>(v.values).subspan(static_cast<std::size_t>(k * bins), bins); };
  const std::vector<int> deg = vertex_degrees(mol);
  for (int i = 0; i < mol.atom_count(); ++i) {
    add_to_histogram(block(0), deg[i], 0, dmax);
    double lo = 0, hi = 0, mean = 0, sd = 0;
    if (deg[i] > 0) {
      lo = std::numeric_limits<double>::infinity();
      hi = 0;
      for (const Neighbor& nb : mol.neighbors(i)) {
        lo = std::min<double>(lo, deg[nb.atom]);
        hi = std::max<double>(hi, deg[nb.atom]);
        mean += deg[nb.atom];
      }
      mean /= deg[i];
      for (const Neighbor& nb : mol.neighbors(i)) {
        sd += (deg[nb.atom] - mean) * (deg[nb.atom] - mean);
      }
      sd = std::sqrt(sd / deg[i]);
    }
    add_to_histogram(block(1), lo, 0, dmax);
    add_to_histogram(block(2), hi, 0, dmax);
    add_to_histogram(block(3), mean, 0, dmax);
    add_to_histogram(block(4), sd, 0, dmax);
  }
  for (double x : edge_betweenness(mol)) {
    add_to_histogram(block(5), x, 0, 1);
  }
  for (double x : jaccard_index(mol)) {
    add_to_histogram(block(6), x, 0, 1);
  }
  for (double x : local_degree_score(mol)) {
    add_to_histogram(block(7), x, 0, dmax);
  }
  return v;
}

TopoVector moltop_vector(const Molecule& mol, const TopoHistogramSpec& spec) {
  if (spec.bins < 2) {
    throw ConfigError("topo: bins must be at least 2");
  }
  const int  bins = spec.bins;
  TopoVector v{std::vector<double>(static_cast<std::size_t>(kMoltopBlocks * bins), 0.0), TopoKind::kMoltop, spec};
  const auto block = [&](int k) { return std::span<double>(v.values).subspan(static_cast<std::size_t>(k * bins), bins); };
  for (double x : edge_betweenness(mol)) {
    add_to_histogram(block(0), x, 0, 1);
  }
  for (double x : adjusted_rand_index(mol)) {
    add_to_histogram(block(1), x, -1, 1);
  }
  for (double x : scan_similarity(mol)) {
    add_to_histogram(block(2), x, 0, 1);
  }
  std::vector<double> z;
  for (const Atom& a : mol.atoms()) {
    z.push_back(a.atomic_number);
  }
  std::vector<double> orders;
  for (const Bond& b : mol.bonds()) {
    orders.push_back(bond_order_value(b));
  }
  mean_sum_std(z, v.values);
  mean_sum_std(orders, v.values);
  return v;
}

FeatureMatrix topo_matrix(std::span<const Molecule> mols, TopoKind kind, TopoHistogramSpec spec,
                          std::vector<std::string> ids) {
  if (ids.size() != mols.size()) {
    throw ConfigError("topo_matrix: id count does not match molecule count");
  }
  if (spec.degree_max <= 0) {
    spec.degree_max = fit_degree_range(mols);
  }
  std::vector<TopoVector> rows(mols.size());
  parallel_for(mols.size(), [&](std::size_t i) {
    rows[i] = kind == TopoKind::kLtp ? ltp_vector(mols[i], spec) : moltop_vector(mols[i], spec);
  });
  FeatureMatrix m;
  m.spec = std::string(kind == TopoKind::kLtp ? "ltp:" : "moltop:") + spec.to_string();
  m.type = FeatureMatrix::Type::kReal;
  m.ids  = std::move(ids);
  const TopoVector empty = kind == TopoKind::kLtp ? ltp_vector(Molecule(), spec) : moltop_vector(Molecule(), spec);
  m.cols = empty.values.size();
  for (const TopoVector& r : rows) {
    m.values.insert(m.values.end(), r.values.begin(), r.values.end());
  }
  return m;
}

}  // namespace beetox
