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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace beetox {

//! Dense row-major matrix with row ids and the spec text of whatever produced it.
struct FeatureMatrix {
  enum class Type : std::uint8_t { kCount = 0, kReal = 1 };

  std::string              spec;
  Type                     type = Type::kReal;
  std::vector<std::string> ids;
  std::size_t              cols = 0;
  std::vector<double>      values;

  std::size_t rows() const { return ids.size(); }
  double      at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double&     at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

//! Rows in the given order; ids and spec are carried over.
FeatureMatrix select_rows(const FeatureMatrix& m, std::span<const int> rows);

//! CSV: a "# spec: ..." comment line, then header "id,0,1,...", then one row per id.
void          write_matrix_csv(std::ostream& out, const FeatureMatrix& m);
FeatureMatrix read_matrix_csv(std::istream& in);

//! Binary container, little-endian:
//!   magic "BTXM", u32 version (1), u8 type (0 = u32 counts, 1 = f64),
//!   u32 spec length + spec bytes, u64 rows, u64 cols,
//!   rows x (u32 id length + id bytes),
//!   rows x cols values, row-major.
void          write_matrix_binary(std::ostream& out, const FeatureMatrix& m);
FeatureMatrix read_matrix_binary(std::istream& in);

void          save_matrix(const std::string& path, const FeatureMatrix& m);
//! Chooses the format from the extension (".csv" or anything else for binary).
FeatureMatrix load_matrix(const std::string& path);

}  // namespace beetox
