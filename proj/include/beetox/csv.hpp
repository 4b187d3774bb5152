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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beetox {

//! RFC 4180 style table: quoted fields, doubled quotes, CRLF or LF line ends.
struct CsvTable {
  std::vector<std::string>              header;
  std::vector<std::vector<std::string>> rows;
  //! 1-based line number of each row in the source, for diagnostics.
  std::vector<std::size_t> line_numbers;

  std::optional<std::size_t> column(std::string_view name) const;
};

//! Throws DataError on an unterminated quote or a row with the wrong field count.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string csv_escape(std::string_view field);
void        write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace beetox
