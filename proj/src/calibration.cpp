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

#include "episim/calibration.h"

#include "episim/batch.h"
#include "episim/sweep.h"

#include <fmt/format.h>

#include <cmath>

namespace episim
{

void CalibrationSpec::validate() const
{
    base.validate();
    if (replicates < 1 || iterations < 1) {
        throw ConfigError("replicates and iterations must be at least 1");
    }
    if (!(lo > 0 && lo < hi && hi <= 1)) {
        throw ConfigError(fmt::format("search interval [{}, {}] must lie in (0, 1]", lo, hi));
    }
    if (!(target_peak_pct > 0 && target_peak_pct < 100) || !(tolerance >= 0)) {
        throw ConfigError("target must lie in (0, 100) with a non-negative tolerance");
    }
}

SimConfig without_interventions(SimConfig config)
{
    config.interventions = InterventionParams{};
    return config;
}

double baseline_median_peak(const SimConfig& config, int replicates, std::uint64_t seed_base, int workers)
{
    const std::int64_t max_ticks = static_cast<std::int64_t>(config.max_days) * config.ticks_per_day;
    std::vector<Job> jobs;
    for (int r = 0; r < replicates; ++r) {
        jobs.push_back(Job{r, config, seed_base + static_cast<std::uint64_t>(r), max_ticks});
    }
    const BatchReport report = run_batch(jobs, workers);
    std::vector<double> peaks;
    for (const auto& rec : report.records) {
        if (!rec.ok) {
            throw InputError(fmt::format("calibration run with seed {} failed: {}", rec.seed, rec.error));
        }
        peaks.push_back(rec.outcome.peak_pct);
    }
    return median(peaks);
}

CalibrationResult calibrate(const CalibrationSpec& spec, int workers)
{
    spec.validate();
    SimConfig config = without_interventions(spec.base);
    double lo        = spec.lo;
    double hi        = spec.hi;

    CalibrationResult result;
    double best_gap = INFINITY;
    for (int it = 0; it < spec.iterations; ++it) {
        const double mid                     = (lo + hi) / 2;
        config.disease.base_transmission_prob = mid;
        const double m                       = baseline_median_peak(config, spec.replicates, spec.seed_base, workers);
        result.steps.push_back({mid, m});
        if (std::abs(m - spec.target_peak_pct) < best_gap) {
            best_gap                 = std::abs(m - spec.target_peak_pct);
            result.transmission_prob = mid;
            result.median_peak_pct   = m;
        }
        if (best_gap <= spec.tolerance) {
            result.converged = true;
            break;
        }
        // peak grows with the transmission probability
        (m < spec.target_peak_pct ? lo : hi) = mid;
    }
    return result;
}

} // namespace episim
