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

#include <Eigen/Dense>

#include "beetox/fingerprints.hpp"
#include "beetox/molecule.hpp"
#include "beetox/pattern.hpp"

namespace beetox {

//! d(x, y) = 1 - Tanimoto(x, y). Fingerprints must share one spec.
Eigen::MatrixXd tanimoto_distances(std::span<const FingerprintVector> fps);

//! Mean Tanimoto similarity between all cross pairs of two fingerprint sets.
double mean_cross_similarity(std::span<const FingerprintVector> a, std::span<const FingerprintVector> b);

enum class CirclesMode { kSequential, kExact };

//! Largest set of molecules with pairwise distance >= t. Sequential: greedy scan in input order. Exact: exhaustive
//! search, at most kExactCirclesLimit molecules.
int n_circles(const Eigen::MatrixXd& distances, double threshold, CirclesMode mode);

constexpr int kExactCirclesLimit = 15;

//! Sequential #Circles over ECFP (radius 2, 1024 bits) with threshold 0.75, divided by the molecule count.
double normalized_n_circles(std::span<const Molecule> mols);

struct SimilarityMap {
  std::vector<std::string> names;
  //! (i, j): mean Tanimoto over cross pairs; diagonal over unordered distinct pairs (1 for a single molecule).
  Eigen::MatrixXd values;
};

SimilarityMap similarity_map(std::span<const std::vector<Molecule>> datasets, std::vector<std::string> names,
                             const FingerprintSpec& spec);

struct MaxMinSplit {
  std::vector<int> train;
  //! Test indices in pick order.
  std::vector<int> test;
};

//! Greedy MaxMin picking of ceil(test_fraction * n) test molecules. The first pick has the largest total distance to
//! all others; each later pick maximizes its minimum distance to those already picked. Ties go to the lower index.
MaxMinSplit maxmin_split(const Eigen::MatrixXd& distances, double test_fraction = 0.2);

//! Elements treated as usual in medicinal chemistry; hydrogen is ignored.
bool is_medical_element(int atomic_number);

struct DatasetProfile {
  std::size_t molecules = 0;
  //! Percentages.
  double fragmented_share  = 0;
  double nonmedical_share  = 0;
  std::vector<std::string> group_names;
  //! Fraction of molecules with at least one match, per pattern.
  std::vector<double> group_presence;
};

DatasetProfile dataset_profile(std::span<const Molecule> mols, const PatternSet& groups);

//! Per dataset: patterns present in at least `threshold` of its molecules and below `threshold` in every other
//! dataset, divided by the number of patterns present in at least `threshold` of its molecules (0 if none).
std::vector<double> unique_functional_groups(std::span<const DatasetProfile> profiles, double threshold = 0.05);

}  // namespace beetox
