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


#include "beetox/matrix_io.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "beetox/csv.hpp"
#include "beetox/error.hpp"

namespace beetox {

namespace {

constexpr std::array<char, 4> kMagic{'B', 'T', 'X', 'M'};
constexpr std::uint32_t       kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  std::array<unsigned char, sizeof(T)> b{};
  std::uint64_t                        bits = 0;
  std::memcpy(&bits, &v, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    b[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(b.data()), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, sizeof(T)> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), sizeof(T))) {
    throw DataError("matrix file: unexpected end of data");
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  }
  T v;
  std::memcpy(&v, &bits, sizeof(T));
  return v;
}

std::string get_string(std::istream& in) {
  const auto  n = get<std::uint32_t>(in);
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), n)) {
    throw DataError("matrix file: unexpected end of data");
  }
  return s;
}

std::string format_value(double v, FeatureMatrix::Type type) {
  if (type == FeatureMatrix::Type::kCount) {
    return std::to_string(static_cast<std::uint64_t>(v));
  }
  std::ostringstream s;
  s.precision(std::numeric_limits<double>::max_digits10);
  s << v;
  return s.str();
}

}  // namespace

FeatureMatrix select_rows(const FeatureMatrix& m, std::span<const int> rows) {
  FeatureMatrix out;
  out.spec = m.spec;
  out.type = m.type;
  out.cols = m.cols;
  out.values.reserve(rows.size() * m.cols);
  for (int r : rows) {
    out.ids.push_back(m.ids.at(r));
    out.values.insert(out.values.end(), m.values.begin() + r * m.cols, m.values.begin() + (r + 1) * m.cols);
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  out << "# spec: " << m.spec << "\n";
  std::vector<std::string> header{"id"};
  for (std::size_t c = 0; c < m.cols; ++c) {
    header.push_back(std::to_string(c));
  }
  write_csv_row(out, header);
  std::vector<std::string> row(m.cols + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    row[0] = m.ids[r];
    for (std::size_t c = 0; c < m.cols; ++c) {
      row[c + 1] = format_value(m.at(r, c), m.type);
    }
    write_csv_row(out, row);
  }
}

FeatureMatrix read_matrix_csv(std::istream& in) {
  FeatureMatrix m;
  std::string   first;
  std::getline(in, first);
  const std::string prefix = "# spec: ";
  if (first.rfind(prefix, 0) != 0) {
    throw DataError("matrix CSV: missing '# spec:' line");
  }
  m.spec = first.substr(prefix.size());
  if (!m.spec.empty() && m.spec.back() == '\r') {
    m.spec.pop_back();
  }
  const CsvTable t = read_csv(in);
  if (t.header.empty() || t.header[0] != "id") {
    throw DataError("matrix CSV: first column must be 'id'");
  }
  m.cols = t.header.size() - 1;
  m.type = FeatureMatrix::Type::kCount;
  for (const auto& row : t.rows) {
    m.ids.push_back(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      double v = 0;
      try {
        std::size_t used = 0;
        v                = std::stod(row[c], &used);
        if (used != row[c].size()) {
          throw std::invalid_argument(row[c]);
        }
      } catch (const std::exception&) {
        throw DataError("matrix CSV: bad value '" + row[c] + "'");
      }
      if (v < 0 || v != std::floor(v)) {
        m.type = FeatureMatrix::Type::kReal;
      }
      m.values.push_back(v);
    }
  }
  return m;
}

void write_matrix_binary(std::ostream& out, const FeatureMatrix& m) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(m.type));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.spec.size()));
  out.write(m.spec.data(), static_cast<std::streamsize>(m.spec.size()));
  put<std::uint64_t>(out, m.rows());
  put<std::uint64_t>(out, m.cols);
  for (const std::string& id : m.ids) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
  }
  for (double v : m.values) {
    if (m.type == FeatureMatrix::Type::kCount) {
      put<std::uint32_t>(out, static_cast<std::uint32_t>(v));
    } else {
      put<double>(out, v);
    }
  }
}

FeatureMatrix read_matrix_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DataError("matrix file: bad magic (expected BTXM)");
  }
  if (const auto version = get<std::uint32_t>(in); version != kVersion) {
    throw DataError("matrix file: unsupported version " + std::to_string(version));
  }
  FeatureMatrix m;
  const auto    type = get<std::uint8_t>(in);
  if (type > 1) {
    throw DataError("matrix file: unknown value type " + std::to_string(type));
  }
  m.type          = static_cast<FeatureMatrix::Type>(type);
  m.spec          = get_string(in);
  const auto rows = get<std::uint64_t>(in);
  m.cols          = get<std::uint64_t>(in);
  for (std::uint64_t r = 0; r < rows; ++r) {
    m.ids.push_back(get_string(in));
  }
  m.values.resize(rows * m.cols);
  for (double& v : m.values) {
    v = m.type == FeatureMatrix::Type::kCount ? static_cast<double>(get<std::uint32_t>(in)) : get<double>(in);
  }
  return m;
}

void save_matrix(const std::string& path, const FeatureMatrix& m) {
  const bool    csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ofstream out(path, csv ? std::ios::out : std::ios::binary);
  if (!out) {
    throw DataError("cannot write " + path);
  }
  if (csv) {
    write_matrix_csv(out, m);
  } else {
    write_matrix_binary(out, m);
  }
}

FeatureMatrix load_matrix(const std::string& path) {
  const bool    csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ifstream in(path, csv ? std::ios::in : std::ios::binary);
  if (!in) {
    throw DataError("cannot read " + path);
  }
  return csv ? read_matrix_csv(in) : read_matrix_binary(in);
}

}  // namespace beetox
