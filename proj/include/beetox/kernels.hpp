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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "beetox/matrix_io.hpp"
#include "beetox/molecule.hpp"

namespace beetox {

enum class KernelKind { kVertexHist, kEdgeHist, kShortestPath, kPropagation, kWl, kWlOa };

std::string_view to_string(KernelKind kind);

struct KernelSpec {
  KernelKind kind = KernelKind::kWlOa;
  //! WL iterations after the initial labelling (wl, wl_oa). 0 reduces WL to the vertex histogram.
  int n_iter = 3;
  //! Diffusion rounds (propagation).
  int t_max = 3;
  //! LSH bin width for propagation.
  double bin_width = 1e-5;
  //! Seed of the propagation LSH projections.
  std::uint64_t seed = 42;
  bool          normalize = false;

  //! Canonical text form with only the fields the kind uses, e.g. "wl_oa:n_iter=3,normalize=1".
  std::string to_string() const;
};

void validate(const KernelSpec& spec);

//! Parses "kind" or "kind:key=value,...". Keys: n_iter, t_max, bin_width, seed, normalize. Keys that do not
//! apply to the kind are rejected.
KernelSpec parse_kernel_spec(std::string_view text);

struct GramMatrix {
  Eigen::MatrixXd          values;
  KernelSpec               spec;
  std::vector<std::string> ids;
};

//! Gram matrix over the collection. Node labels are atomic numbers; edge labels are single, double, triple,
//! aromatic or other. Throws NumericalError when normalization meets a zero self-kernel.
GramMatrix gram(std::span<const Molecule> mols, const KernelSpec& spec, std::vector<std::string> ids = {});

//! Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& k);

struct GramCheck {
  double max_asymmetry = 0;
  double min_eigenvalue = 0;
  //! -1e-6 * trace / n.
  double psd_tolerance = 0;
  bool   symmetric = false;
  bool   psd = false;
};

GramCheck check_gram(const Eigen::MatrixXd& k);

//! Rows and columns picked by index, e.g. the train block or the test-vs-train block.
Eigen::MatrixXd slice(const Eigen::MatrixXd& k, std::span<const int> rows, std::span<const int> cols);

FeatureMatrix gram_to_matrix(const GramMatrix& g);
GramMatrix    gram_from_matrix(const FeatureMatrix& m);

}  // namespace beetox
