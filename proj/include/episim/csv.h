// Copyright 2026 The episim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPISIM_CSV_H
#define EPISIM_CSV_H

#include "episim/errors.h"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace episim
{

/// Minimal comma-separated table: no quoting, first line is the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers; ///< source line of each row

    /// Index of a named column, or -1.
    int column(std::string_view name) const;

    /// Typed field access; InputError names the source line on failure.
    double number(std::size_t row, int col) const;
    long long integer(std::size_t row, int col) const;
};

/// Parse a CSV stream. Blank lines are skipped; rows with the wrong field
/// count raise InputError.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

} // namespace episim

#endif // EPISIM_CSV_H
