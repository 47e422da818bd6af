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

#ifndef EPISIM_SWEEP_H
#define EPISIM_SWEEP_H

#include "episim/factors.h"
#include "episim/simulation.h"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace episim
{

/// Descriptive statistics of a replicate sample.
struct Summary {
    int n           = 0;
    double median   = 0;
    double mean     = 0;
    double min      = 0;
    double max      = 0;
    double range    = 0;
    double variance = 0; ///< n-1 denominator; 0 when n == 1
    double sd       = 0;
    double se       = 0; ///< sd / sqrt(n)
    bool variance_defined = false;
};

/// Throws InputError on an empty sample.
Summary summarize(std::span<const double> values);

/// Median; the mean of the two central order statistics for even sizes.
double median(std::span<const double> values);

/// One-at-a-time sweep over a single intervention factor.
struct SweepSpec {
    Factor parameter = Factor::SocialDistancing;
    std::vector<double> levels;
    int replicates = 12;
    SimConfig base;
    std::uint64_t seed_base = 1;
    FactorBounds bounds;

    /// Throws ConfigError: levels must be strictly increasing and within bounds.
    void validate() const;
};

struct SweepLevel {
    double level = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> peaks; ///< indexed by replicate
    Summary summary;
};

struct SweepResult {
    Factor parameter = Factor::SocialDistancing;
    std::vector<SweepLevel> levels;

    std::vector<double> medians() const;
};

/// Seed for replicate `replicate` at `level`: seed_base + 64-bit mix of (level, replicate).
std::uint64_t sweep_seed(std::uint64_t seed_base, double level, int replicate);

/// Run all (level, replicate) simulations on `workers` threads.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

/**
 * (Y_max - Y_min) / Y_max over per-level medians. Returns nullopt
 * ("no signal") when Y_max is 0. Throws InputError for fewer than two levels.
 */
std::optional<double> sensitivity_index(std::span<const double> medians);

/// `level,replicate,seed,peak_pct`
void write_sweep_runs_csv(std::ostream& out, const SweepResult& result);

/// Statistics as rows, levels as columns:
/// `statistic,<level 1>,...` with Median, Mean, Range, Variance, Standard Deviation, Standard Error.
void write_sweep_summary_csv(std::ostream& out, const SweepResult& result);

} // namespace episim

#endif // EPISIM_SWEEP_H
