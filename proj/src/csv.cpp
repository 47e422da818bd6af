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

#include "episim/csv.h"
#include "episim/config.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>

namespace episim
{

int CsvTable::column(std::string_view name) const
{
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

double CsvTable::number(std::size_t row, int col) const
{
    try {
        return parse_double(rows.at(row).at(static_cast<std::size_t>(col)));
    }
    catch (const ConfigError& e) {
        throw InputError(fmt::format("line {}: {}", line_numbers.at(row), e.what()));
    }
}

long long CsvTable::integer(std::size_t row, int col) const
{
    try {
        return parse_int(rows.at(row).at(static_cast<std::size_t>(col)));
    }
    catch (const ConfigError& e) {
        throw InputError(fmt::format("line {}: {}", line_numbers.at(row), e.what()));
    }
}

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_list(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header  = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw InputError(fmt::format("line {}: expected {} fields, got {}", line_no, table.header.size(),
                                         fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) {
        throw InputError("empty CSV input");
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open '{}'", path.string()));
    }
    return read_csv(in);
}

} // namespace episim
