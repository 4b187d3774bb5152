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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beetox/matrix_io.hpp"
#include "beetox/molecule.hpp"
#include "beetox/pattern.hpp"

namespace beetox {

//! Version of the identifier hash. Bumped whenever stable_hash or any identifier layout changes.
inline constexpr int kFingerprintHashVersion = 1;

//! Order-sensitive 64-bit hash of a word sequence (splitmix64 finalizer chained over the words).
std::uint64_t stable_hash(std::span<const std::uint64_t> words);

enum class FingerprintKind { kEcfp, kAtomPair, kTopologicalTorsion, kBranchedPath, kSubstructure, kAtomCounts };

std::string_view              to_string(FingerprintKind kind);
std::optional<FingerprintKind> fingerprint_kind_from_string(std::string_view name);

//! Unset optional fields take the kind's default; setting a field the kind does not use is a configuration error.
struct FingerprintSpec {
  FingerprintKind    kind = FingerprintKind::kEcfp;
  std::optional<int> fp_size;
  std::optional<int> radius;
  std::optional<int> max_path;
  std::optional<bool> count;
  //! Pattern file for the substructure kind.
  std::string                       pattern_file;
  std::shared_ptr<const PatternSet> patterns;

  int  resolved_fp_size() const;
  int  resolved_radius() const;
  int  resolved_max_path() const;
  bool resolved_count() const;
  //! Vector length (fp_size, pattern count or 89).
  int length() const;

  //! Canonical text form, e.g. "ecfp:count=0,fp_size=2048,radius=2". Unset fields are written with their defaults.
  std::string to_string() const;
  bool        operator==(const FingerprintSpec& other) const { return to_string() == other.to_string(); }
};

//! Throws ConfigError on out-of-range values or fields that do not apply to the kind.
void validate(const FingerprintSpec& spec);

//! Parses "kind" or "kind:key=value,...". Keys: fp_size, radius, max_path, count, patterns (substructure).
//! The pattern file is loaded leniently.
FingerprintSpec parse_fingerprint_spec(std::string_view text);

struct FingerprintVector {
  std::vector<std::uint32_t> values;
  FingerprintSpec            spec;
};

FingerprintVector compute_fingerprint(const Molecule& mol, const FingerprintSpec& spec);

//! Data-parallel over molecules; output order follows input order.
std::vector<FingerprintVector> compute_fingerprints(std::span<const Molecule> mols, const FingerprintSpec& spec);

//! Stacks vectors of one spec into a count matrix.
FeatureMatrix fingerprint_matrix(std::span<const FingerprintVector> fps, std::vector<std::string> ids);

//! Binary: |a and b| / |a or b| over nonzero entries; count: sum of minima over sum of maxima.
//! Two all-zero vectors have similarity 1.
double tanimoto(const FingerprintVector& a, const FingerprintVector& b);
double tanimoto(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, bool count);

//! One ECFP environment before folding.
struct EcfpEnvironment {
  std::uint64_t identifier;
  int           radius;
  int           center;
};

//! Unfolded ECFP environments up to the radius, in generation order (radius-major, then atom index).
//! An environment is kept only if its atom set has not appeared before.
std::vector<EcfpEnvironment> ecfp_environments(const Molecule& mol, int radius);

//! Raw 64-bit identifiers of the hashed kinds, one per enumerated feature, before folding.
std::vector<std::uint64_t> feature_identifiers(const Molecule& mol, const FingerprintSpec& spec);

}  // namespace beetox
