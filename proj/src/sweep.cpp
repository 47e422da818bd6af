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

#include "episim/sweep.h"

#include "episim/batch.h"
#include "episim/errors.h"
#include "episim/rng.h"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

namespace episim
{

double median(std::span<const double> values)
{
    if (values.empty()) {
        throw InputError("median of an empty sample");
    }
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

Summary summarize(std::span<const double> values)
{
    if (values.empty()) {
        throw InputError("summary of an empty sample");
    }
    Summary s;
    s.n      = static_cast<int>(values.size());
    s.median = median(values);
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min   = *lo;
    s.max   = *hi;
    s.range = s.max - s.min;
    double sum = 0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / s.n;
    if (s.n > 1) {
        double ss = 0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.variance         = ss / (s.n - 1);
        s.variance_defined = true;
    }
    s.sd = std::sqrt(s.variance);
    s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    return s;
}

void SweepSpec::validate() const
{
    bounds.validate();
    if (replicates < 1) {
        throw ConfigError("replicates must be at least 1");
    }
    if (levels.empty()) {
        throw ConfigError("a sweep needs at least one level");
    }
    const Bounds& b = bounds[parameter];
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] >= b.min && levels[i] <= b.max)) {
            throw ConfigError(fmt::format("{} level {} outside [{}, {}]", factor_name(parameter), levels[i], b.min,
                                          b.max));
        }
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw ConfigError("sweep levels must be strictly increasing");
        }
    }
    base.validate();
}

std::vector<double> SweepResult::medians() const
{
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& l : levels) {
        out.push_back(l.summary.median);
    }
    return out;
}

std::uint64_t sweep_seed(std::uint64_t seed_base, double level, int replicate)
{
    // +0.0 and -0.0 name the same level
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(level == 0 ? 0.0 : level);
    return seed_base + mix64(hash_combine(mix64(bits), static_cast<std::uint64_t>(replicate)));
}

SweepResult run_sweep(const SweepSpec& spec, int workers)
{
    spec.validate();
    const std::int64_t max_ticks = static_cast<std::int64_t>(spec.base.max_days) * spec.base.ticks_per_day;

    std::vector<Job> jobs;
    jobs.reserve(spec.levels.size() * spec.replicates);
    for (std::size_t l = 0; l < spec.levels.size(); ++l) {
        SimConfig config = spec.base;
        apply_factor(config, spec.parameter, spec.levels[l]);
        for (int r = 0; r < spec.replicates; ++r) {
            jobs.push_back(Job{static_cast<std::int64_t>(jobs.size()), config,
                               sweep_seed(spec.seed_base, spec.levels[l], r), max_ticks});
        }
    }

    const BatchReport report = run_batch(jobs, workers);
    SweepResult result;
    result.parameter = spec.parameter;
    for (std::size_t l = 0; l < spec.levels.size(); ++l) {
        SweepLevel level;
        level.level = spec.levels[l];
        for (int r = 0; r < spec.replicates; ++r) {
            const JobRecord& rec = report.records[l * spec.replicates + r];
            if (!rec.ok) {
                throw InputError(fmt::format("sweep run at level {} replicate {} failed: {}", level.level, r,
                                             rec.error));
            }
            level.seeds.push_back(rec.seed);
            level.peaks.push_back(rec.outcome.peak_pct);
        }
        level.summary = summarize(level.peaks);
        result.levels.push_back(std::move(level));
    }
    return result;
}

std::optional<double> sensitivity_index(std::span<const double> medians)
{
    if (medians.size() < 2) {
        throw InputError("sensitivity index needs at least two levels");
    }
    auto [lo, hi] = std::minmax_element(medians.begin(), medians.end());
    if (!(*hi > 0)) {
        return std::nullopt;
    }
    return (*hi - *lo) / *hi;
}

void write_sweep_runs_csv(std::ostream& out, const SweepResult& result)
{
    out << "level,replicate,seed,peak_pct\n";
    for (const auto& l : result.levels) {
        for (std::size_t r = 0; r < l.peaks.size(); ++r) {
            out << fmt::format("{:g},{},{},{:.6f}\n", l.level, r, l.seeds[r], l.peaks[r]);
        }
    }
}

void write_sweep_summary_csv(std::ostream& out, const SweepResult& result)
{
    out << "statistic";
    for (const auto& l : result.levels) {
        out << fmt::format(",{:g}", l.level);
    }
    out << '\n';

    auto row = [&](const char* name, auto get) {
        out << name;
        for (const auto& l : result.levels) {
            out << fmt::format(",{:.6f}", get(l.summary));
        }
        out << '\n';
    };
    row("Median", [](const Summary& s) { return s.median; });
    row("Mean", [](const Summary& s) { return s.mean; });
    row("Range", [](const Summary& s) { return s.range; });
    row("Variance", [](const Summary& s) { return s.variance; });
    row("Standard Deviation", [](const Summary& s) { return s.sd; });
    row("Standard Error", [](const Summary& s) { return s.se; });
}

} // namespace episim
