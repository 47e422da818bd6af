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

#ifndef EPISIM_CONFIG_H
#define EPISIM_CONFIG_H

#include "episim/errors.h"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace episim
{

inline constexpr int num_age_groups = 9;

using AgeArray = std::array<double, num_age_groups>;

/// Age groups are decades: 0-9, 10-19, ..., 70-79, 80+.
std::string age_group_label(int group);

/// Probability (in %) that an infection becomes serious, by age group.
inline constexpr AgeArray serious_rate_by_age_default = {0.1, 0.3, 1.2, 3.2, 4.9, 10.2, 16.6, 24.3, 27.3};

/// Real infection fatality ratio (in %), by age group.
inline constexpr AgeArray infection_fatality_ratio_default = {0.002, 0.006, 0.03, 0.08, 0.15,
                                                              0.60,  2.2,   5.1,  9.3};

/// Fatality rate among serious cases (in %), as tabulated (rounded to two decimals).
inline constexpr AgeArray model_fatality_by_age_default = {2.00, 2.00, 2.50, 2.50, 3.06,
                                                           5.88, 13.25, 20.99, 34.07};

/// Fatality among serious cases implied by 100 * IFR / SR, unrounded.
AgeArray model_fatality_from_rates(const AgeArray& serious_rate, const AgeArray& fatality_ratio);

/// 1000 agents per decade with an extra 1000 in 40-49.
inline constexpr AgeArray uniform_age_distribution = {0.1, 0.1, 0.1, 0.1, 0.2, 0.1, 0.1, 0.1, 0.1};

struct DiseaseParams {
    double infection_duration_days = 21;
    double asymptomatic_days       = 6;
    double infectious_distance_m   = 2.0;
    double infectivity             = 100;
    double mask_penetration        = 0.44;
    AgeArray serious_rate_by_age   = serious_rate_by_age_default;
    AgeArray model_fatality_by_age = model_fatality_by_age_default;
    double base_transmission_prob  = 0.85; // output of `episim calibrate` on the default config

    void validate() const;
};

struct InterventionParams {
    double social_distancing_m = 0;
    double mask_usage_rate     = 0;
    bool lockdown_enabled      = false;
    double lockdown_delay_days = 0;
    double ignore_lockdown_pct = 0;
    bool city_confinement      = false;
    double isolation_rate      = 0;

    void validate() const;
    bool operator==(const InterventionParams&) const = default;
};

/**
 * Everything a single run needs: structure parameters, disease model,
 * interventions and the seed.
 */
struct SimConfig {
    int population               = 10000;
    double grid_size             = 100;
    double metres_per_patch      = 40;
    int ticks_per_day            = 24;
    int healthcare_capacity      = 0;
    double hospital_death_multiplier    = 0.5;
    double hospital_recovery_multiplier = 0.75;
    double hospital_admission_prob      = 0.1;
    int initial_infected         = 5;
    int distancing_attempts      = 8;
    /// Per-tick probability that a mobile agent relocates to a uniformly
    /// random point of the region it may move in instead of stepping locally.
    double travel_prob           = 0.01;
    AgeArray age_distribution    = uniform_age_distribution;
    std::string weather          = "cold-dry";
    std::uint64_t seed           = 1;
    int max_days                 = 400;

    DiseaseParams disease;
    InterventionParams interventions;

    /// Throws ConfigError on the first violated constraint.
    void validate() const;
};

/// Set one documented key from its textual value. Throws ConfigError for
/// unknown keys or unparsable values.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Same as set_config_value but restricted to intervention keys.
void set_intervention_value(InterventionParams& params, std::string_view key, std::string_view value);

bool is_intervention_key(std::string_view key);

/// All keys accepted by set_config_value, in canonical (sorted) order.
const std::vector<std::string>& config_keys();

/// Read `key = value` lines ('#' starts a comment) on top of the defaults.
SimConfig load_config(const std::filesystem::path& path);
SimConfig parse_config(std::string_view text, const std::string& source = "<config>");

/**
 * Canonical text form: every key sorted, one `key=value` per line, floats
 * with 9 significant digits. Seed is excluded so that it can be keyed
 * separately.
 */
std::string canonical_config(const SimConfig& config);

/// 64-bit hash of canonical_config(config) combined with seed.
std::uint64_t config_hash(const SimConfig& config, std::uint64_t seed);

/// Split "a, b, c" into trimmed fields.
std::vector<std::string> split_list(std::string_view text, char sep = ',');
std::string_view trim(std::string_view text);
double parse_double(std::string_view text);
long long parse_int(std::string_view text);
bool parse_bool(std::string_view text);

} // namespace episim

#endif // EPISIM_CONFIG_H
