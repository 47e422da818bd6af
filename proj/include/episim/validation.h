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

#ifndef EPISIM_VALIDATION_H
#define EPISIM_VALIDATION_H

#include "episim/csv.h"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace episim
{

/// A case curve: strictly increasing time index (ticks, days or day numbers) and values >= 0.
struct CaseSeries {
    std::vector<double> time;
    std::vector<double> values;
    std::string label = "model";

    std::size_t size() const
    {
        return values.size();
    }
    /// Throws InputError when an invariant is broken.
    void validate() const;
};

/// Series with time 0, 1, 2, ...
CaseSeries make_series(std::vector<double> values, std::string label = "model");

/**
 * target_len points, one uniformly chosen from each window
 * [floor(j L / T), floor((j + 1) L / T)). Throws InputError for target_len = 0
 * or a series shorter than target_len.
 */
CaseSeries downsample_to_daily(const CaseSeries& model, std::size_t target_len, std::uint64_t seed);

/// Values divided by the maximum. Throws InputError for an all-zero series.
CaseSeries normalize(const CaseSeries& series);

struct Correlation {
    std::size_t n    = 0;
    double pearson   = 0;
    double pearson_p = 0;
    double spearman  = 0;
    double spearman_p = 0;
};

/// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Two-sided p-value of a correlation coefficient: t = r sqrt((n-2)/(1-r^2)), n-2 degrees of freedom.
double correlation_p_value(double r, std::size_t n);

/// Throws InputError on unequal lengths, fewer than 3 points, or a constant series.
Correlation correlate(const CaseSeries& a, const CaseSeries& b);

/// `date,value` CSV with ISO-8601 dates; time is days since 1970-01-01.
CaseSeries read_actual_csv(std::istream& in);
CaseSeries read_actual_csv(const std::filesystem::path& path);

/// Model series from a CSV column; time from `tick` if present, else `day`, else the row number.
CaseSeries model_series(const CsvTable& table, std::string_view column);

/// Days since 1970-01-01 of a YYYY-MM-DD date. Throws InputError.
std::int64_t parse_iso_date(std::string_view text);

/// `n,pearson,pearson_p,spearman,spearman_p`
void write_correlation_csv(std::ostream& out, const Correlation& c);

} // namespace episim

#endif // EPISIM_VALIDATION_H
