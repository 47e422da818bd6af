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

#include "episim/validation.h"

#include "episim/errors.h"
#include "episim/rng.h"

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

namespace episim
{

void CaseSeries::validate() const
{
    if (time.size() != values.size()) {
        throw InputError(fmt::format("{} series has {} times but {} values", label, time.size(), values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0) || !std::isfinite(values[i])) {
            throw InputError(fmt::format("{} series value {} at index {} is not a non-negative number", label,
                                         values[i], i));
        }
        if (i > 0 && !(time[i] > time[i - 1])) {
            throw InputError(fmt::format("{} series time index not strictly increasing at index {}", label, i));
        }
    }
}

CaseSeries make_series(std::vector<double> values, std::string label)
{
    CaseSeries s;
    s.time.resize(values.size());
    std::iota(s.time.begin(), s.time.end(), 0.0);
    s.values = std::move(values);
    s.label  = std::move(label);
    return s;
}

CaseSeries downsample_to_daily(const CaseSeries& model, std::size_t target_len, std::uint64_t seed)
{
    if (target_len == 0) {
        throw InputError("downsampling target length must be positive");
    }
    const std::size_t len = model.size();
    if (len < target_len) {
        throw InputError(fmt::format("{} series has {} points, fewer than the target {}", model.label, len,
                                     target_len));
    }
    Rng rng(seed);
    CaseSeries out;
    out.label = model.label;
    for (std::size_t j = 0; j < target_len; ++j) {
        const std::size_t lo = j * len / target_len;
        const std::size_t hi = (j + 1) * len / target_len;
        const std::size_t i  = lo + rng.below(hi - lo);
        out.time.push_back(model.time[i]);
        out.values.push_back(model.values[i]);
    }
    return out;
}

CaseSeries normalize(const CaseSeries& series)
{
    const double top = series.values.empty() ? 0 : *std::max_element(series.values.begin(), series.values.end());
    if (!(top > 0)) {
        throw InputError(fmt::format("cannot normalize {} series: maximum is 0", series.label));
    }
    CaseSeries out = series;
    for (double& v : out.values) {
        v /= top;
    }
    return out;
}

std::vector<double> average_ranks(const std::vector<double>& values)
{
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) {
            ++j;
        }
        const double avg = (i + j) / 2.0 + 1;
        for (std::size_t m = i; m <= j; ++m) {
            ranks[idx[m]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b)
{
    const std::size_t n = a.size();
    const double ma     = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb     = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0 || sbb == 0) {
        throw InputError("correlation undefined: a series has zero variance");
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double correlation_p_value(double r, std::size_t n)
{
    if (n < 3) {
        throw InputError("a p-value needs at least 3 points");
    }
    if (std::abs(r) >= 1) {
        return 0;
    }
    const double df = static_cast<double>(n - 2);
    const double t  = std::abs(r) * std::sqrt(df / (1 - r * r));
    boost::math::students_t dist(df);
    return std::min(1.0, 2 * boost::math::cdf(boost::math::complement(dist, t)));
}

Correlation correlate(const CaseSeries& a, const CaseSeries& b)
{
    if (a.size() != b.size()) {
        throw InputError(fmt::format("series lengths differ: {} vs {}", a.size(), b.size()));
    }
    if (a.size() < 3) {
        throw InputError("correlation needs at least 3 points");
    }
    Correlation c;
    c.n          = a.size();
    c.pearson    = pearson(a.values, b.values);
    c.pearson_p  = correlation_p_value(c.pearson, c.n);
    c.spearman   = pearson(average_ranks(a.values), average_ranks(b.values));
    c.spearman_p = correlation_p_value(c.spearman, c.n);
    return c;
}

std::int64_t parse_iso_date(std::string_view text)
{
    using namespace std::chrono;
    auto bad = [&] { return InputError(fmt::format("invalid ISO-8601 date '{}'", text)); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw bad();
    }
    auto field = [&](std::size_t pos, std::size_t len) {
        int v           = 0;
        const char* end = text.data() + pos + len;
        auto [ptr, ec]  = std::from_chars(text.data() + pos, end, v);
        if (ec != std::errc{} || ptr != end) {
            throw bad();
        }
        return v;
    };
    const year_month_day ymd{year{field(0, 4)}, month{static_cast<unsigned>(field(5, 2))},
                             day{static_cast<unsigned>(field(8, 2))}};
    if (!ymd.ok()) {
        throw bad();
    }
    return sys_days{ymd}.time_since_epoch().count();
}

CaseSeries read_actual_csv(std::istream& in)
{
    const CsvTable table = read_csv(in);
    if (table.header != std::vector<std::string>{"date", "value"}) {
        throw InputError("actual-data CSV must have the header 'date,value'");
    }
    CaseSeries s;
    s.label = "actual";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            s.time.push_back(static_cast<double>(parse_iso_date(table.rows[r][0])));
        }
        catch (const InputError& e) {
            throw InputError(fmt::format("line {}: {}", table.line_numbers[r], e.what()));
        }
        s.values.push_back(table.number(r, 1));
    }
    s.validate();
    return s;
}

CaseSeries read_actual_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open '{}'", path.string()));
    }
    return read_actual_csv(in);
}

CaseSeries model_series(const CsvTable& table, std::string_view column)
{
    const int col = table.column(column);
    if (col < 0) {
        throw InputError(fmt::format("model CSV has no column '{}'", column));
    }
    int time_col = table.column("tick");
    if (time_col < 0) {
        time_col = table.column("day");
    }
    CaseSeries s;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        s.time.push_back(time_col >= 0 ? table.number(r, time_col) : static_cast<double>(r));
        s.values.push_back(table.number(r, col));
    }
    s.validate();
    return s;
}

void write_correlation_csv(std::ostream& out, const Correlation& c)
{
    out << "n,pearson,pearson_p,spearman,spearman_p\n";
    out << fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", c.n, c.pearson, c.pearson_p, c.spearman,
                       c.spearman_p);
}

} // namespace episim
