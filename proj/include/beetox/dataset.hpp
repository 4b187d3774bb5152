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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beetox/molecule.hpp"

namespace beetox {

inline constexpr std::string_view kVersion = "0.1.0";

//! Source column names for each record field. Only smiles (and label, when required) must exist.
struct ColumnMapping {
  std::string smiles = "SMILES";
  std::string label  = "label";
  std::string id     = "name";
  std::string year   = "year";
  std::string split  = "split";
};

//! "field=Column,..." with fields smiles, label, id, year, split.
ColumnMapping parse_column_mapping(std::string_view text);

struct DatasetRecord {
  std::string                id;
  std::string                smiles;
  std::optional<int>         label;
  std::optional<std::string> split;
  std::optional<int>         year;
  //! Every source field, in header order.
  std::vector<std::string> fields;
  Molecule                 molecule;
};

struct ParseFailure {
  std::size_t line;
  std::string smiles;
  std::string message;
};

struct Dataset {
  std::string                name;
  std::string                path;
  std::vector<std::string>   header;
  std::vector<DatasetRecord> records;
  std::vector<ParseFailure>  failures;
  //! Hex digest over (smiles, label, split) of every parsed record.
  std::string content_hash;

  std::size_t           size() const { return records.size(); }
  std::size_t           positives() const;
  std::vector<int>      labels() const;  // throws DataError if a record is unlabeled
  std::vector<Molecule> molecules() const;
  std::vector<std::string> ids() const;
  //! Indices of records whose split tag equals `tag`.
  std::vector<int> split_indices(std::string_view tag) const;
  void             refresh_hash();
};

struct IngestOptions {
  ColumnMapping columns;
  //! Any unparseable SMILES is fatal.
  bool strict = false;
  bool require_labels = true;
  bool allow_empty    = false;
};

//! Unparseable rows are collected in Dataset::failures unless strict. Records without an id column get "row<N>".
Dataset ingest(const std::string& path, const IngestOptions& options);

//! Tags the records listed in a split file (a CSV with the id column or the SMILES column of the mapping) with
//! `tag`. Throws DataError if a listed entry matches no record.
void apply_split_file(Dataset& data, const std::string& path, const std::string& tag, const ColumnMapping& columns);

//! Tags every untagged record with `tag`.
void tag_remaining(Dataset& data, const std::string& tag);

//! The newest ceil(fraction * n) records by year (later rows first among equal years) become "test", the rest
//! "train". Throws DataError if a record has no year.
void time_split(Dataset& data, double fraction);

//! 16 hex digits of stable_hash over the bytes.
std::string hex_digest(std::string_view bytes);

}  // namespace beetox
