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


#include "beetox/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "beetox/csv.hpp"
#include "beetox/error.hpp"
#include "beetox/fingerprints.hpp"
#include "beetox/smiles.hpp"

namespace beetox {

namespace {

std::optional<int> parse_int_field(std::string_view text) {
  while (!text.empty() && text.back() == ' ') {
    text.remove_suffix(1);
  }
  while (!text.empty() && text.front() == ' ') {
    text.remove_prefix(1);
  }
  int value = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p == text.data()) {
    return std::nullopt;
  }
  // Accept "1.0" style integers.
  if (p != text.data() + text.size()) {
    double d = 0;
    auto [q, ec2] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec2 != std::errc() || q != text.data() + text.size() || d != std::floor(d)) {
      return std::nullopt;
    }
    return static_cast<int>(d);
  }
  return value;
}

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name  = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto  dot   = name.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

}  // namespace

std::string hex_digest(std::string_view bytes) {
  std::vector<std::uint64_t> words((bytes.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    words[i / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * (i % 8));
  }
  words.push_back(bytes.size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(stable_hash(words)));
  return buf;
}

ColumnMapping parse_column_mapping(std::string_view text) {
  ColumnMapping m;
  while (!text.empty()) {
    const std::size_t      comma = text.find(',');
    const std::string_view item  = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq + 1 == item.size()) {
      throw ConfigError("column mapping: expected field=Column, got '" + std::string(item) + "'");
    }
    const std::string_view field = item.substr(0, eq);
    const std::string      column(item.substr(eq + 1));
    if (field == "smiles") {
      m.smiles = column;
    } else if (field == "label") {
      m.label = column;
    } else if (field == "id") {
      m.id = column;
    } else if (field == "year") {
      m.year = column;
    } else if (field == "split") {
      m.split = column;
    } else {
      throw ConfigError("column mapping: unknown field '" + std::string(field) + "'");
    }
  }
  return m;
}

std::size_t Dataset::positives() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const DatasetRecord& r) { return r.label == 1; }));
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  for (const auto& r : records) {
    if (!r.label) {
      throw DataError("dataset '" + name + "': record '" + r.id + "' has no label");
    }
    out.push_back(*r.label);
  }
  return out;
}

std::vector<Molecule> Dataset::molecules() const {
  std::vector<Molecule> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back(r.molecule);
  }
  return out;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  for (const auto& r : records) {
    out.push_back(r.id);
  }
  return out;
}

std::vector<int> Dataset::split_indices(std::string_view tag) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].split && *records[i].split == tag) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

void Dataset::refresh_hash() {
  std::string bytes;
  for (const auto& r : records) {
    bytes += r.smiles;
    bytes += '\x1f';
    bytes += r.label ? std::to_string(*r.label) : "";
    bytes += '\x1f';
    bytes += r.split.value_or("");
    bytes += '\n';
  }
  content_hash = hex_digest(bytes);
}

Dataset ingest(const std::string& path, const IngestOptions& options) {
  const CsvTable table = read_csv_file(path);
  const auto     smiles_col = table.column(options.columns.smiles);
  if (!smiles_col) {
    throw DataError(path + ": missing SMILES column '" + options.columns.smiles + "'");
  }
  const auto label_col = table.column(options.columns.label);
  if (options.require_labels && !label_col) {
    throw DataError(path + ": missing label column '" + options.columns.label + "'");
  }
  const auto id_col    = table.column(options.columns.id);
  const auto year_col  = table.column(options.columns.year);
  const auto split_col = table.column(options.columns.split);

  Dataset data;
  data.name   = stem(path);
  data.path   = path;
  data.header = table.header;
  std::vector<std::optional<DatasetRecord>> parsed(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto&   row  = table.rows[r];
    const auto    line = table.line_numbers[r];
    DatasetRecord rec;
    rec.smiles = row[*smiles_col];
    rec.fields = row;
    rec.id     = id_col && !row[*id_col].empty() ? row[*id_col] : "row" + std::to_string(line);
    if (label_col && !row[*label_col].empty()) {
      const auto label = parse_int_field(row[*label_col]);
      if (!label || (*label != 0 && *label != 1)) {
        throw DataError(path + ":" + std::to_string(line) + ": label must be 0 or 1, got '" + row[*label_col] + "'");
      }
      rec.label = *label;
    } else if (options.require_labels) {
      throw DataError(path + ":" + std::to_string(line) + ": empty label");
    }
    if (year_col && !row[*year_col].empty()) {
      rec.year = parse_int_field(row[*year_col]);
      if (!rec.year) {
        throw DataError(path + ":" + std::to_string(line) + ": year is not an integer: '" + row[*year_col] + "'");
      }
    }
    if (split_col && !row[*split_col].empty()) {
      rec.split = row[*split_col];
    }
    try {
      rec.molecule = parse_smiles(rec.smiles);
      data.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      if (options.strict) {
        throw DataError(path + ":" + std::to_string(line) + ": cannot parse SMILES '" + rec.smiles + "': " + e.what());
      }
      data.failures.push_back({line, rec.smiles, e.what()});
    }
  }
  if (data.records.empty() && data.failures.empty() && !options.allow_empty) {
    throw DataError(path + ": no records");
  }
  data.refresh_hash();
  return data;
}

void apply_split_file(Dataset& data, const std::string& path, const std::string& tag, const ColumnMapping& columns) {
  const CsvTable table    = read_csv_file(path);
  const auto     id_col   = table.column(columns.id);
  const auto     smi_col  = table.column(columns.smiles);
  const bool     by_id    = id_col.has_value();
  if (!by_id && !smi_col) {
    throw DataError(path + ": split file needs a '" + columns.id + "' or '" + columns.smiles + "' column");
  }
  std::multimap<std::string, int> index;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    index.emplace(by_id ? data.records[i].id : data.records[i].smiles, static_cast<int>(i));
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& key   = table.rows[r][by_id ? *id_col : *smi_col];
    const auto         range = index.equal_range(key);
    if (range.first == range.second) {
      throw DataError(path + ":" + std::to_string(table.line_numbers[r]) + ": '" + key +
                      "' matches no record of dataset '" + data.name + "'");
    }
    for (auto it = range.first; it != range.second; ++it) {
      data.records[it->second].split = tag;
    }
  }
  data.refresh_hash();
}

void tag_remaining(Dataset& data, const std::string& tag) {
  for (auto& r : data.records) {
    if (!r.split) {
      r.split = tag;
    }
  }
  data.refresh_hash();
}

void time_split(Dataset& data, double fraction) {
  if (!(fraction > 0 && fraction < 1)) {
    throw ConfigError("time split: test fraction must lie in (0, 1)");
  }
  std::vector<int> order(data.records.size());
  std::iota(order.begin(), order.end(), 0);
  for (const auto& r : data.records) {
    if (!r.year) {
      throw DataError("time split: record '" + r.id + "' has no year");
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return *data.records[a].year > *data.records[b].year || (*data.records[a].year == *data.records[b].year && a > b);
  });
  const auto n_test = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(order.size()) - 1e-9));
  for (std::size_t k = 0; k < order.size(); ++k) {
    data.records[order[k]].split = k < n_test ? "test" : "train";
  }
  data.refresh_hash();
}

}  // namespace beetox
