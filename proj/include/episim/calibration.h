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

#ifndef EPISIM_CALIBRATION_H
#define EPISIM_CALIBRATION_H

#include "episim/config.h"

#include <cstdint>
#include <vector>

namespace episim
{

/**
 * Bisection on base_transmission_prob so that the median peak active_pct
 * of the intervention-free baseline hits a target. Every candidate uses
 * the same seeds, so the comparison between candidates is paired.
 */
struct CalibrationSpec {
    SimConfig base;
    double target_peak_pct = 45.4;
    double tolerance       = 0.5;
    int replicates         = 12;
    std::uint64_t seed_base = 1;
    double lo      = 0.2;
    double hi      = 1.0;
    int iterations = 10;

    void validate() const;
};

struct CalibrationStep {
    double transmission_prob = 0;
    double median_peak_pct   = 0;
};

struct CalibrationResult {
    double transmission_prob = 0;
    double median_peak_pct   = 0;
    std::vector<CalibrationStep> steps;
    bool converged = false;
};

/// Median baseline peak over seeds seed_base .. seed_base + replicates - 1.
double baseline_median_peak(const SimConfig& config, int replicates, std::uint64_t seed_base, int workers);

CalibrationResult calibrate(const CalibrationSpec& spec, int workers);

/// The config with every intervention switched off.
SimConfig without_interventions(SimConfig config);

} // namespace episim

#endif // EPISIM_CALIBRATION_H
