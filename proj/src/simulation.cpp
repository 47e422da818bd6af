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

#include "episim/simulation.h"
#include "episim/csv.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace episim
{

TimeSeriesRow record(const World& world)
{
    TimeSeriesRow row;
    row.tick           = world.tick();
    row.day            = world.day();
    row.counts         = world.counts();
    row.hospitalized   = world.hospitalized_count();
    row.new_infections = world.new_infections_last_tick();
    row.active_pct     = 100.0 * world.active_infections() / world.population();
    return row;
}

TimeSeries run_simulation(const SimConfig& config, std::uint64_t seed, std::int64_t max_ticks)
{
    if (max_ticks <= 0) {
        throw ConfigError("max_ticks must be positive");
    }
    World world = init_world(config, seed);
    TimeSeries series;
    series.population = world.population();
    while (world.tick() < max_ticks) {
        step(world);
        series.rows.push_back(record(world));
        if (world.active_infections() == 0) {
            break;
        }
    }
    return series;
}

TimeSeries run_simulation(const SimConfig& config)
{
    return run_simulation(config, config.seed, static_cast<std::int64_t>(config.max_days) * config.ticks_per_day);
}

double peak_infection(const TimeSeries& series)
{
    if (series.empty()) {
        throw InputError("peak_infection: empty time series");
    }
    double peak = series.rows.front().active_pct;
    for (const auto& row : series.rows) {
        peak = std::max(peak, row.active_pct);
    }
    return peak;
}

std::vector<DailyRow> daily_summary(const TimeSeries& series, int ticks_per_day)
{
    std::vector<DailyRow> out;
    for (const auto& row : series.rows) {
        // row.tick counts completed ticks, so ticks 1..24 belong to day 0
        const std::int64_t day = (row.tick - 1) / ticks_per_day;
        if (out.empty() || out.back().day != day) {
            out.push_back({day, row.active_pct, 0});
        }
        out.back().active_pct = row.active_pct;
        out.back().new_infections += row.new_infections;
    }
    return out;
}

void write_timeseries_csv(std::ostream& out, const TimeSeries& series)
{
    out << timeseries_csv_header << '\n';
    for (const auto& r : series.rows) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{:.6f}\n", r.tick, r.day, r.count(HealthState::Healthy),
                           r.count(HealthState::Asymptomatic), r.count(HealthState::LightSymptomatic),
                           r.count(HealthState::SeriousSymptomatic), r.count(HealthState::Recovered),
                           r.count(HealthState::Dead), r.hospitalized, r.active_pct);
    }
}

void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& series)
{
    std::ofstream out(path);
    if (!out) {
        throw InputError(fmt::format("cannot write '{}'", path.string()));
    }
    write_timeseries_csv(out, series);
}

TimeSeries read_timeseries_csv(std::istream& in)
{
    CsvTable table = read_csv(in);
    if (table.header != split_list(timeseries_csv_header)) {
        throw InputError("time series CSV: unexpected header");
    }
    TimeSeries series;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        TimeSeriesRow r;
        r.tick = table.integer(i, 0);
        r.day  = table.integer(i, 1);
        for (int s = 0; s < num_health_states; ++s) {
            r.counts[s] = static_cast<int>(table.integer(i, 2 + s));
        }
        r.hospitalized = static_cast<int>(table.integer(i, 8));
        r.active_pct   = table.number(i, 9);
        series.rows.push_back(r);
    }
    if (!series.rows.empty()) {
        const auto& c = series.rows.front().counts;
        for (int v : c) {
            series.population += v;
        }
    }
    return series;
}

void write_daily_csv(std::ostream& out, const std::vector<DailyRow>& rows)
{
    out << "day,active_pct,new_infections\n";
    for (const auto& r : rows) {
        out << fmt::format("{},{:.6f},{}\n", r.day, r.active_pct, r.new_infections);
    }
}

} // namespace episim
