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

#ifndef EPISIM_SCENARIO_H
#define EPISIM_SCENARIO_H

#include "episim/simulation.h"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace episim
{

/// Parameter changes taking effect at the start of `day`.
struct TimelineEvent {
    int day = 0;
    /// Intervention keys and their textual values, validated at load.
    std::vector<std::pair<std::string, std::string>> changes;
    std::optional<int> imported_cases_per_week;
    int line = 0;

    bool empty() const
    {
        return changes.empty() && !imported_cases_per_week;
    }
};

/**
 * A country-style run: population structure, initial interventions and a
 * timeline of changes. Immutable once loaded.
 */
struct Scenario {
    std::string name;
    AgeArray age_distribution = uniform_age_distribution;
    InterventionParams initial;
    int initial_imported_cases_per_week = 0;
    /// Extra SimConfig keys applied on top of the base config.
    std::vector<std::pair<std::string, std::string>> config_overrides;
    std::vector<TimelineEvent> events; ///< sorted by day, one per day
    int max_days = 100;

    const TimelineEvent* event_on(int day) const;
};

/// Mutable per-run scenario state.
struct ScenarioState {
    int imported_cases_per_week = 0;
    int imported_total          = 0;
};

/**
 * Parse the scenario text format:
 *
 *     name: Hong Kong
 *     max_days: 170
 *     age_distribution: 0.0859, 0.0746, ...
 *     config: initial_infected=5
 *     initial: social_distancing_m=1.5, mask_usage_rate=99
 *     events:
 *       - day=7, imported_cases_per_week=2
 *
 * Errors carry the offending line number. Age distributions that sum to
 * 1 within 1e-3 (tables rounded to four digits) are renormalized.
 */
Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Config for a scenario run: base config with the scenario's population structure and initial interventions.
SimConfig scenario_config(const Scenario& scenario, const SimConfig& base);

/// Apply the event scheduled for the world's current day, if any.
void apply_events(World& world, const Scenario& scenario, ScenarioState& state);

/// Infect `rate` random healthy agents (all remaining if fewer). Returns the number infected.
int inject_imported_cases(World& world, int rate);

/// True at the day boundaries where a week of imports is due (days 7, 14, ...).
inline bool import_due(std::int64_t day)
{
    return day > 0 && day % 7 == 0;
}

/// Run the scenario for its full length (no early stop, imports can restart an epidemic).
TimeSeries run_scenario(const Scenario& scenario, const SimConfig& base, std::uint64_t seed);

} // namespace episim

#endif // EPISIM_SCENARIO_H
