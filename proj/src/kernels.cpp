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


#include "beetox/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "beetox/error.hpp"
#include "beetox/fingerprints.hpp"
#include "beetox/parallel.hpp"

namespace beetox {

namespace {

using SparseVector = std::vector<std::pair<std::uint64_t, double>>;

SparseVector from_counts(const std::map<std::uint64_t, double>& counts) {
  return {counts.begin(), counts.end()};
}

double dot(const SparseVector& a, const SparseVector& b) {
  double      s = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      s += a[i++].second * b[j++].second;
    }
  }
  return s;
}

double intersection(const SparseVector& a, const SparseVector& b) {
  double      s = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      s += std::min(a[i++].second, b[j++].second);
    }
  }
  return s;
}

int edge_label(const Bond& b) {
  return b.is_other() ? 5 : static_cast<int>(b.order);
}

std::uint64_t pair_key(int za, int zb) {
  return static_cast<std::uint64_t>(std::min(za, zb)) * 256 + static_cast<std::uint64_t>(std::max(za, zb));
}

SparseVector vertex_features(const Molecule& m) {
  std::map<std::uint64_t, double> c;
  for (const Atom& a : m.atoms()) {
    c[static_cast<std::uint64_t>(a.atomic_number)] += 1;
  }
  return from_counts(c);
}

SparseVector edge_features(const Molecule& m) {
  std::map<std::uint64_t, double> c;
  for (const Bond& b : m.bonds()) {
    c[pair_key(m.atom(b.begin).atomic_number, m.atom(b.end).atomic_number) * 8 + edge_label(b)] += 1;
  }
  return from_counts(c);
}

// All-pairs distances by breadth-first search (unit weights, so equal to Floyd-Warshall).
SparseVector shortest_path_features(const Molecule& m) {
  std::map<std::uint64_t, double> c;
  const int                       n = m.atom_count();
  std::vector<int>                dist(n);
  std::vector<int>                queue;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, s);
    dist[s] = 0;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (const Neighbor& nb : m.neighbors(queue[k])) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[queue[k]] + 1;
          queue.push_back(nb.atom);
        }
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (dist[t] > 0) {
        c[(pair_key(m.atom(s).atomic_number, m.atom(t).atomic_number) << 16) | static_cast<std::uint64_t>(dist[t])] +=
            1;
      }
    }
  }
  return from_counts(c);
}

// WL relabelling with one dictionary per iteration shared by the whole collection, filled in input order.
std::vector<SparseVector> wl_features(std::span<const Molecule> mols, int n_iter) {
  std::vector<std::vector<int>>                  labels(mols.size());
  std::vector<std::map<std::uint64_t, double>>   counts(mols.size());
  for (std::size_t g = 0; g < mols.size(); ++g) {
    for (const Atom& a : mols[g].atoms()) {
      labels[g].push_back(a.atomic_number);
      counts[g][static_cast<std::uint64_t>(a.atomic_number)] += 1;
    }
  }
  std::vector<int> signature;
  for (int it = 1; it <= n_iter; ++it) {
    std::map<std::vector<int>, int> dictionary;
    std::vector<std::vector<int>>   next(mols.size());
    for (std::size_t g = 0; g < mols.size(); ++g) {
      const Molecule& m = mols[g];
      next[g].resize(m.atom_count());
      for (int v = 0; v < m.atom_count(); ++v) {
        std::vector<std::pair<int, int>> nbrs;
        for (const Neighbor& nb : m.neighbors(v)) {
          nbrs.emplace_back(edge_label(m.bond(nb.bond)), labels[g][nb.atom]);
        }
        std::sort(nbrs.begin(), nbrs.end());
        signature.assign(1, labels[g][v]);
        for (const auto& [e, l] : nbrs) {
          signature.push_back(e);
          signature.push_back(l);
        }
        const auto [pos, inserted] = dictionary.emplace(signature, static_cast<int>(dictionary.size()));
        next[g][v]                 = pos->second;
        counts[g][(static_cast<std::uint64_t>(it) << 40) | static_cast<std::uint64_t>(pos->second)] += 1;
      }
    }
    labels.swap(next);
  }
  std::vector<SparseVector> out;
  for (const auto& c : counts) {
    out.push_back(from_counts(c));
  }
  return out;
}

// Label diffusion with l1 locality-sensitive hashing of each node's distribution (Cauchy projections).
std::vector<SparseVector> propagation_features(std::span<const Molecule> mols, const KernelSpec& spec) {
  std::vector<int> alphabet;
  for (const Molecule& m : mols) {
    for (const Atom& a : m.atoms()) {
      alphabet.push_back(a.atomic_number);
    }
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  const std::size_t L = alphabet.size();

  // Every random draw is keyed by (seed, step, atomic number), so kernel values between two molecules do not depend
  // on which other molecules share the collection.
  const auto uniform = [&](std::uint64_t t, std::uint64_t z) {
    const std::uint64_t words[] = {spec.seed, t, z};
    return (static_cast<double>(stable_hash(words) >> 11) + 0.5) * 0x1.0p-53;
  };
  std::vector<std::vector<double>> w(spec.t_max + 1, std::vector<double>(L));
  std::vector<double>              offset(spec.t_max + 1);
  for (int t = 0; t <= spec.t_max; ++t) {
    for (std::size_t l = 0; l < L; ++l) {
      w[t][l] = std::tan(std::numbers::pi * (uniform(t, alphabet[l]) - 0.5));
    }
    offset[t] = uniform(t, 0) * spec.bin_width;
  }

  std::vector<SparseVector> out(mols.size());
  parallel_for(mols.size(), [&](std::size_t g) {
    const Molecule&                 m = mols[g];
    const int                       n = m.atom_count();
    std::vector<double>             p(static_cast<std::size_t>(n) * L, 0.0);
    std::vector<double>             q(p.size());
    std::map<std::uint64_t, double> c;
    for (int v = 0; v < n; ++v) {
      const auto pos = std::lower_bound(alphabet.begin(), alphabet.end(), m.atom(v).atomic_number) - alphabet.begin();
      p[v * L + pos] = 1.0;
    }
    for (int t = 0; t <= spec.t_max; ++t) {
      if (t > 0) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int v = 0; v < n; ++v) {
          const int deg = m.degree(v);
          if (deg == 0) {
            std::copy_n(p.begin() + v * L, L, q.begin() + v * L);
            continue;
          }
          for (const Neighbor& nb : m.neighbors(v)) {
            for (std::size_t l = 0; l < L; ++l) {
              q[v * L + l] += p[nb.atom * L + l] / deg;
            }
          }
        }
        p.swap(q);
      }
      for (int v = 0; v < n; ++v) {
        double x = 0;
        for (std::size_t l = 0; l < L; ++l) {
          x += w[t][l] * p[v * L + l];
        }
        const double  bin = std::floor((x + offset[t]) / spec.bin_width);
        const auto    b   = static_cast<std::int64_t>(std::clamp(bin, -9.0e18, 9.0e18));
        const std::uint64_t words[] = {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(b)};
        c[stable_hash(words)] += 1;
      }
    }
    out[g] = from_counts(c);
  });
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  int value = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("kernel spec: " + std::string(key) + " must be an integer, got '" + std::string(v) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::kVertexHist: return "vertex_hist";
    case KernelKind::kEdgeHist: return "edge_hist";
    case KernelKind::kShortestPath: return "shortest_path";
    case KernelKind::kPropagation: return "propagation";
    case KernelKind::kWl: return "wl";
    case KernelKind::kWlOa: return "wl_oa";
  }
  return "unknown";
}

std::string KernelSpec::to_string() const {
  std::ostringstream s;
  s << beetox::to_string(kind) << ":";
  if (kind == KernelKind::kWl || kind == KernelKind::kWlOa) {
    s << "n_iter=" << n_iter << ",";
  }
  if (kind == KernelKind::kPropagation) {
    s << "bin_width=" << bin_width << ",seed=" << seed << ",t_max=" << t_max << ",";
  }
  s << "normalize=" << (normalize ? 1 : 0);
  return s.str();
}

void validate(const KernelSpec& spec) {
  if (spec.n_iter < 0 || spec.n_iter > 5) {
    throw ConfigError("kernel: n_iter must be in 0..5");
  }
  if (spec.t_max < 1 || spec.t_max > 5) {
    throw ConfigError("kernel: t_max must be in 1..5");
  }
  if (!(spec.bin_width > 0)) {
    throw ConfigError("kernel: bin_width must be positive");
  }
}

KernelSpec parse_kernel_spec(std::string_view text) {
  const std::size_t      colon = text.find(':');
  const std::string_view name  = text.substr(0, colon);
  KernelSpec             spec;
  bool                   found = false;
  for (KernelKind k : {KernelKind::kVertexHist, KernelKind::kEdgeHist, KernelKind::kShortestPath,
                       KernelKind::kPropagation, KernelKind::kWl, KernelKind::kWlOa}) {
    if (to_string(k) == name) {
      spec.kind = k;
      found     = true;
    }
  }
  if (!found) {
    throw ConfigError("unknown kernel kind '" + std::string(name) + "'");
  }
  const bool wl          = spec.kind == KernelKind::kWl || spec.kind == KernelKind::kWlOa;
  const bool propagation = spec.kind == KernelKind::kPropagation;
  std::string_view rest  = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t      comma = rest.find(',');
    const std::string_view item  = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("kernel spec: expected key=value, got '" + std::string(item) + "'");
    }
    const std::string_view key   = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "normalize") {
      spec.normalize = parse_int(key, value) != 0;
    } else if (key == "n_iter" && wl) {
      spec.n_iter = parse_int(key, value);
    } else if (key == "t_max" && propagation) {
      spec.t_max = parse_int(key, value);
    } else if (key == "seed" && propagation) {
      spec.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "bin_width" && propagation) {
      try {
        spec.bin_width = std::stod(std::string(value));
      } catch (const std::exception&) {
        throw ConfigError("kernel spec: bin_width must be a number");
      }
    } else {
      throw ConfigError("kernel spec: key '" + std::string(key) + "' does not apply to " + std::string(name));
    }
  }
  validate(spec);
  return spec;
}

GramMatrix gram(std::span<const Molecule> mols, const KernelSpec& spec, std::vector<std::string> ids) {
  validate(spec);
  if (mols.empty()) {
    throw DataError("gram: empty molecule list");
  }
  if (ids.empty()) {
    for (std::size_t i = 0; i < mols.size(); ++i) {
      ids.push_back(std::to_string(i));
    }
  }
  if (ids.size() != mols.size()) {
    throw ConfigError("gram: id count does not match molecule count");
  }
  std::vector<SparseVector> phi(mols.size());
  switch (spec.kind) {
    case KernelKind::kVertexHist:
      parallel_for(mols.size(), [&](std::size_t i) { phi[i] = vertex_features(mols[i]); });
      break;
    case KernelKind::kEdgeHist:
      parallel_for(mols.size(), [&](std::size_t i) { phi[i] = edge_features(mols[i]); });
      break;
    case KernelKind::kShortestPath:
      parallel_for(mols.size(), [&](std::size_t i) { phi[i] = shortest_path_features(mols[i]); });
      break;
    case KernelKind::kPropagation: phi = propagation_features(mols, spec); break;
    case KernelKind::kWl:
    case KernelKind::kWlOa: phi = wl_features(mols, spec.n_iter); break;
  }
  const std::size_t n = mols.size();
  GramMatrix        g{Eigen::MatrixXd(n, n), spec, std::move(ids)};
  const bool        oa = spec.kind == KernelKind::kWlOa;
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      const double k = oa ? intersection(phi[i], phi[j]) : dot(phi[i], phi[j]);
      g.values(i, j) = k;
      g.values(j, i) = k;
    }
  });
  if (spec.normalize) {
    Eigen::VectorXd d = g.values.diagonal();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(d(i) > 0)) {
        throw NumericalError("kernel " + spec.to_string() + ": zero self-kernel for '" + g.ids[i] +
                             "', normalization impossible");
      }
    }
    d = d.cwiseSqrt().cwiseInverse();
    g.values = d.asDiagonal() * g.values * d.asDiagonal();
    g.values.diagonal().setOnes();
  }
  return g;
}

double min_eigenvalue(const Eigen::MatrixXd& k) {
  if (k.rows() == 0) {
    return 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

GramCheck check_gram(const Eigen::MatrixXd& k) {
  GramCheck c;
  c.max_asymmetry  = k.rows() == 0 ? 0.0 : (k - k.transpose()).cwiseAbs().maxCoeff();
  c.symmetric      = c.max_asymmetry <= 1e-9;
  c.min_eigenvalue = min_eigenvalue(k);
  c.psd_tolerance  = k.rows() == 0 ? 0.0 : -1e-6 * k.trace() / static_cast<double>(k.rows());
  c.psd            = c.min_eigenvalue >= c.psd_tolerance;
  return c;
}

Eigen::MatrixXd slice(const Eigen::MatrixXd& k, std::span<const int> rows, std::span<const int> cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(r, c) = k(rows[r], cols[c]);
    }
  }
  return out;
}

FeatureMatrix gram_to_matrix(const GramMatrix& g) {
  FeatureMatrix m;
  m.spec = g.spec.to_string();
  m.type = FeatureMatrix::Type::kReal;
  m.ids  = g.ids;
  m.cols = static_cast<std::size_t>(g.values.cols());
  m.values.resize(m.rows() * m.cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      m.at(r, c) = g.values(r, c);
    }
  }
  return m;
}

GramMatrix gram_from_matrix(const FeatureMatrix& m) {
  if (m.cols != m.rows()) {
    throw DataError("gram matrix file is not square");
  }
  GramMatrix g{Eigen::MatrixXd(m.rows(), m.cols), parse_kernel_spec(m.spec), m.ids};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      g.values(r, c) = m.at(r, c);
    }
  }
  return g;
}

}  // namespace beetox
