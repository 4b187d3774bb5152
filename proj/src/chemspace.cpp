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


#include "beetox/chemspace.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "beetox/error.hpp"
#include "beetox/parallel.hpp"

namespace beetox {

namespace {

void require_one_spec(std::span<const FingerprintVector> a, std::span<const FingerprintVector> b) {
  const FingerprintVector* first = !a.empty() ? &a.front() : !b.empty() ? &b.front() : nullptr;
  for (auto set : {a, b}) {
    for (const auto& fp : set) {
      if (!(fp.spec == first->spec)) {
        throw ConfigError("fingerprints computed under different specs: " + fp.spec.to_string() + " vs " +
                          first->spec.to_string());
      }
    }
  }
}

}  // namespace

Eigen::MatrixXd tanimoto_distances(std::span<const FingerprintVector> fps) {
  require_one_spec(fps, {});
  const std::size_t n = fps.size();
  Eigen::MatrixXd   d = Eigen::MatrixXd::Zero(n, n);
  if (n == 0) {
    return d;
  }
  const bool count = fps.front().spec.resolved_count();
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 1.0 - tanimoto(fps[i].values, fps[j].values, count);
      d(i, j)        = v;
      d(j, i)        = v;
    }
  });
  return d;
}

double mean_cross_similarity(std::span<const FingerprintVector> a, std::span<const FingerprintVector> b) {
  require_one_spec(a, b);
  if (a.empty() || b.empty()) {
    throw DataError("similarity between empty molecule sets");
  }
  const bool          count = a.front().spec.resolved_count();
  std::vector<double> row(a.size(), 0.0);
  parallel_for(a.size(), [&](std::size_t i) {
    for (const auto& y : b) {
      row[i] += tanimoto(a[i].values, y.values, count);
    }
  });
  double sum = 0;
  for (double r : row) {
    sum += r;
  }
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

int n_circles(const Eigen::MatrixXd& d, double threshold, CirclesMode mode) {
  const Eigen::Index n = d.rows();
  if (n == 0 || d.cols() != n) {
    throw DataError("#circles needs a non-empty square distance matrix");
  }
  if (!(threshold >= 0 && threshold < 1)) {
    throw ConfigError("#circles threshold must lie in [0, 1)");
  }
  if (mode == CirclesMode::kSequential) {
    std::vector<Eigen::Index> admitted;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::all_of(admitted.begin(), admitted.end(), [&](Eigen::Index j) { return d(i, j) >= threshold; })) {
        admitted.push_back(i);
      }
    }
    return static_cast<int>(admitted.size());
  }
  if (n > kExactCirclesLimit) {
    throw ConfigError("exact #circles is limited to " + std::to_string(kExactCirclesLimit) + " molecules, got " +
                      std::to_string(n));
  }
  // compatible[i]: molecules at distance >= t from i; a subset is valid if every member is compatible with the rest.
  std::vector<std::uint32_t> compatible(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && d(i, j) >= threshold) {
        compatible[i] |= 1u << j;
      }
    }
  }
  int best = 0;
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    const int size = std::popcount(subset);
    if (size <= best) {
      continue;
    }
    bool ok = true;
    for (std::uint32_t rest = subset; rest != 0 && ok; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      ok          = (subset & ~(1u << i) & ~compatible[i]) == 0;
    }
    if (ok) {
      best = size;
    }
  }
  return best;
}

double normalized_n_circles(std::span<const Molecule> mols) {
  if (mols.empty()) {
    throw DataError("normalized #circles of an empty dataset");
  }
  FingerprintSpec spec;
  spec.kind    = FingerprintKind::kEcfp;
  spec.radius  = 2;
  spec.fp_size = 1024;
  const auto fps = compute_fingerprints(mols, spec);
  return n_circles(tanimoto_distances(fps), 0.75, CirclesMode::kSequential) / static_cast<double>(mols.size());
}

SimilarityMap similarity_map(std::span<const std::vector<Molecule>> datasets, std::vector<std::string> names,
                             const FingerprintSpec& spec) {
  if (names.size() != datasets.size()) {
    throw ConfigError("similarity map: dataset and name counts differ");
  }
  std::vector<std::vector<FingerprintVector>> fps;
  for (const auto& ds : datasets) {
    if (ds.empty()) {
      throw DataError("similarity map: empty dataset");
    }
    fps.push_back(compute_fingerprints(ds, spec));
  }
  const std::size_t k = datasets.size();
  SimilarityMap     map{std::move(names), Eigen::MatrixXd::Zero(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t n = fps[i].size();
    if (n == 1) {
      map.values(i, i) = 1.0;
    } else {
      // Cross mean over the set with itself includes n self-pairs of similarity 1.
      const double all = mean_cross_similarity(fps[i], fps[i]) * static_cast<double>(n) * static_cast<double>(n);
      map.values(i, i) = (all - static_cast<double>(n)) / (static_cast<double>(n) * static_cast<double>(n - 1));
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      map.values(i, j) = map.values(j, i) = mean_cross_similarity(fps[i], fps[j]);
    }
  }
  return map;
}

MaxMinSplit maxmin_split(const Eigen::MatrixXd& d, double test_fraction) {
  const Eigen::Index n = d.rows();
  if (d.cols() != n) {
    throw DataError("maxmin split: distance matrix is not square");
  }
  if (n < 5) {
    throw DataError("maxmin split needs at least 5 molecules, got " + std::to_string(n));
  }
  if (!(test_fraction > 0 && test_fraction < 1)) {
    throw ConfigError("maxmin split: test fraction must lie in (0, 1)");
  }
  const auto n_test = static_cast<Eigen::Index>(std::ceil(test_fraction * static_cast<double>(n) - 1e-9));
  MaxMinSplit         split;
  std::vector<bool>   picked(n, false);
  const Eigen::VectorXd totals = d.rowwise().sum();
  Eigen::Index          first  = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (totals(i) > totals(first)) {
      first = i;
    }
  }
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (Eigen::Index pick = first;;) {
    picked[pick] = true;
    split.test.push_back(static_cast<int>(pick));
    if (static_cast<Eigen::Index>(split.test.size()) == n_test) {
      break;
    }
    Eigen::Index next = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], d(i, pick));
      if (!picked[i] && (next < 0 || nearest[i] > nearest[next])) {
        next = i;
      }
    }
    pick = next;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!picked[i]) {
      split.train.push_back(static_cast<int>(i));
    }
  }
  return split;
}

bool is_medical_element(int z) {
  static constexpr std::array<int, 13> kMedical{6, 7, 8, 14, 17, 16, 9, 15, 5, 34, 53, 35, 33};
  return z == 1 || std::find(kMedical.begin(), kMedical.end(), z) != kMedical.end();
}

DatasetProfile dataset_profile(std::span<const Molecule> mols, const PatternSet& groups) {
  DatasetProfile p;
  p.molecules = mols.size();
  for (const auto& g : groups.patterns) {
    p.group_names.push_back(g.name);
  }
  p.group_presence.assign(groups.patterns.size(), 0.0);
  if (mols.empty()) {
    return p;
  }
  std::vector<std::vector<char>> hits(mols.size());
  parallel_for(mols.size(), [&](std::size_t i) {
    hits[i].resize(groups.patterns.size());
    for (std::size_t g = 0; g < groups.patterns.size(); ++g) {
      hits[i][g] = match_exists(groups.patterns[g].pattern, mols[i]) ? 1 : 0;
    }
  });
  double fragmented = 0, nonmedical = 0;
  for (std::size_t i = 0; i < mols.size(); ++i) {
    fragmented += mols[i].fragment_count() >= 2 ? 1 : 0;
    const auto& atoms = mols[i].atoms();
    nonmedical += std::any_of(atoms.begin(), atoms.end(), [](const Atom& a) {
      return !is_medical_element(a.atomic_number);
    }) ? 1 : 0;
    for (std::size_t g = 0; g < hits[i].size(); ++g) {
      p.group_presence[g] += hits[i][g];
    }
  }
  const double n     = static_cast<double>(mols.size());
  p.fragmented_share = 100.0 * fragmented / n;
  p.nonmedical_share = 100.0 * nonmedical / n;
  for (double& v : p.group_presence) {
    v /= n;
  }
  return p;
}

std::vector<double> unique_functional_groups(std::span<const DatasetProfile> profiles, double threshold) {
  if (profiles.size() < 2) {
    throw ConfigError("unique functional groups need at least 2 datasets");
  }
  for (const auto& p : profiles) {
    if (p.group_names != profiles.front().group_names) {
      throw ConfigError("unique functional groups: profiles use different pattern sets");
    }
  }
  std::vector<double> out;
  for (std::size_t d = 0; d < profiles.size(); ++d) {
    int common = 0, unique = 0;
    for (std::size_t g = 0; g < profiles[d].group_presence.size(); ++g) {
      if (profiles[d].group_presence[g] < threshold) {
        continue;
      }
      ++common;
      bool elsewhere = false;
      for (std::size_t o = 0; o < profiles.size(); ++o) {
        elsewhere = elsewhere || (o != d && profiles[o].group_presence[g] >= threshold);
      }
      unique += elsewhere ? 0 : 1;
    }
    out.push_back(common > 0 ? static_cast<double>(unique) / common : 0.0);
  }
  return out;
}

}  // namespace beetox
