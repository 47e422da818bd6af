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

#ifndef EPISIM_SIMULATION_H
#define EPISIM_SIMULATION_H

#include "episim/world.h"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace episim
{

/// State of the world after one tick.
struct TimeSeriesRow {
    std::int64_t tick = 0;
    std::int64_t day  = 0;
    StateCounts counts{};
    int hospitalized   = 0;
    int new_infections = 0;
    double active_pct  = 0;

    int count(HealthState s) const
    {
        return counts[static_cast<int>(s)];
    }
    bool operator==(const TimeSeriesRow&) const = default;
};

struct TimeSeries {
    int population = 0;
    std::vector<TimeSeriesRow> rows;

    bool empty() const
    {
        return rows.empty();
    }
    std::size_t size() const
    {
        return rows.size();
    }
    bool operator==(const TimeSeries&) const = default;
};

/// Row describing the world's current state (recorded after each step).
TimeSeriesRow record(const World& world);

/**
 * Run one simulation until `max_ticks` ticks have elapsed or no agent is
 * infected any more. One row per tick.
 */
TimeSeries run_simulation(const SimConfig& config, std::uint64_t seed, std::int64_t max_ticks);

/// Convenience overload: config.seed and config.max_days.
TimeSeries run_simulation(const SimConfig& config);

/// Maximum of active_pct. Throws InputError on an empty series.
double peak_infection(const TimeSeries& series);

/// One row per day: active_pct at the day's last tick and new infections during that day.
struct DailyRow {
    std::int64_t day;
    double active_pct;
    int new_infections;
};
std::vector<DailyRow> daily_summary(const TimeSeries& series, int ticks_per_day);

/// `tick,day,healthy,asymptomatic,light,serious,recovered,dead,hospitalized,active_pct`
inline constexpr const char* timeseries_csv_header =
    "tick,day,healthy,asymptomatic,light,serious,recovered,dead,hospitalized,active_pct";

void write_timeseries_csv(std::ostream& out, const TimeSeries& series);
void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries read_timeseries_csv(std::istream& in);

/// `day,active_pct,new_infections`
void write_daily_csv(std::ostream& out, const std::vector<DailyRow>& rows);

} // namespace episim

#endif // EPISIM_SIMULATION_H
