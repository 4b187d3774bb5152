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

#include <span>
#include <string>
#include <vector>

#include "beetox/matrix_io.hpp"
#include "beetox/molecule.hpp"

namespace beetox {

struct TopoHistogramSpec {
  int bins = 50;
  //! Upper edge for degree-valued descriptors; use fit_degree_range over the whole dataset.
  double degree_max = 1.0;

  std::string to_string() const;
};

//! Largest vertex degree over the dataset (at least 1), for a spec shared by all molecules.
double fit_degree_range(std::span<const Molecule> mols);

enum class TopoKind { kLtp, kMoltop };

struct TopoVector {
  std::vector<double> values;
  TopoKind            kind = TopoKind::kLtp;
  TopoHistogramSpec   spec;
};

// Per-element descriptors. Edge values are indexed by bond, vertex values by atom.
// Every quantity is computed within the atom's connected component.

std::vector<int> vertex_degrees(const Molecule& mol);
//! Brandes edge betweenness, normalized by the number of unordered vertex pairs in the component.
std::vector<double> edge_betweenness(const Molecule& mol);
//! |N(u) & N(v)| / |N(u) | N(v)| with open neighbourhoods.
std::vector<double> jaccard_index(const Molecule& mol);
//! deg(v) / max degree over neighbours; 1 for isolated vertices.
std::vector<double> local_degree_score(const Molecule& mol);
//! Adjusted Rand index between the two-block partitions {N(u), rest} and {N(v), rest} of the component.
std::vector<double> adjusted_rand_index(const Molecule& mol);
//! |G(u) & G(v)| / sqrt(|G(u)| |G(v)|) with closed neighbourhoods.
std::vector<double> scan_similarity(const Molecule& mol);

//! Histograms of degree, neighbour-degree min/max/mean/std, EBC, Jaccard and LDS (8 blocks of `bins`).
TopoVector ltp_vector(const Molecule& mol, const TopoHistogramSpec& spec);
//! Histograms of EBC, ARI and SCAN, then mean/sum/std of atomic numbers and of bond orders (aromatic = 1.5).
TopoVector moltop_vector(const Molecule& mol, const TopoHistogramSpec& spec);

//! Fits the degree range on `mols` when `spec.degree_max` is not positive, then featurizes in parallel.
FeatureMatrix topo_matrix(std::span<const Molecule> mols, TopoKind kind, TopoHistogramSpec spec,
                          std::vector<std::string> ids);

//! Adds `value` to the histogram block starting at `block` with `bins` equal bins over [lo, hi].
//! Values outside the range go to the first or last bin.
void add_to_histogram(std::span<double> block, double value, double lo, double hi);

}  // namespace beetox
