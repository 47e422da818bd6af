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

#ifndef EPISIM_WORLD_H
#define EPISIM_WORLD_H

#include "episim/config.h"
#include "episim/rng.h"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace episim
{

enum class HealthState : std::uint8_t
{
    Healthy,
    Asymptomatic,
    LightSymptomatic,
    SeriousSymptomatic,
    Recovered,
    Dead,
    Count
};

inline constexpr int num_health_states = static_cast<int>(HealthState::Count);

std::string_view to_string(HealthState state);

/// True for the transitions the disease model may perform.
bool is_allowed_transition(HealthState from, HealthState to);

inline bool is_infected(HealthState s)
{
    return s == HealthState::Asymptomatic || s == HealthState::LightSymptomatic ||
           s == HealthState::SeriousSymptomatic;
}

inline bool is_symptomatic(HealthState s)
{
    return s == HealthState::LightSymptomatic || s == HealthState::SeriousSymptomatic;
}

struct Position {
    double x = 0;
    double y = 0;
    bool operator==(const Position&) const = default;
};

enum class Gender : std::uint8_t
{
    Female,
    Male
};

struct Agent {
    int id       = 0;
    int age_group = 0;
    Position position;
    int home_city = 0;
    Gender gender = Gender::Female; // carried, never used by the dynamics
    HealthState health = HealthState::Healthy;
    int infection_clock = 0;
    bool masked           = false;
    bool quarantined      = false;
    bool hospitalized     = false;
    bool ignores_lockdown = false;
    std::optional<std::int64_t> death_scheduled_at;

    bool alive() const
    {
        return health != HealthState::Dead;
    }
    bool operator==(const Agent&) const = default;
};

using StateCounts = std::array<int, num_health_states>;

/// Axis-aligned city block, [x0, x1] x [y0, y1] in patch units.
struct CityBlock {
    double x0, y0, x1, y1;
    bool contains(Position p) const
    {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

/// Health transition of one agent during one tick.
struct TransitionEvent {
    std::int64_t tick;
    int agent;
    HealthState from;
    HealthState to;
};

/**
 * Uniform bucket grid over the simulation space. Answers "which agents are
 * within radius r of p" for the small radii used by distancing and
 * transmission.
 */
class SpatialIndex
{
public:
    SpatialIndex() = default;
    SpatialIndex(double grid_size, double cell_size);

    void insert(int id, Position p);
    void remove(int id);
    void move(int id, Position to);

    /// Call f(id) for every stored agent whose cell overlaps the disc around p.
    template <class F>
    void for_each_near(Position p, double radius, F&& f) const
    {
        const int cx0 = cell_coord(p.x - radius);
        const int cx1 = cell_coord(p.x + radius);
        const int cy0 = cell_coord(p.y - radius);
        const int cy1 = cell_coord(p.y + radius);
        for (int cy = cy0; cy <= cy1; ++cy) {
            for (int cx = cx0; cx <= cx1; ++cx) {
                for (int id : m_cells[static_cast<std::size_t>(cy) * m_cells_per_side + cx]) {
                    f(id);
                }
            }
        }
    }

private:
    int cell_coord(double v) const;
    std::size_t cell_of(Position p) const;

    double m_inv_cell    = 1;
    int m_cells_per_side = 1;
    std::vector<std::vector<int>> m_cells;
    std::vector<int> m_cell_of_id; ///< -1 when not stored
};

/**
 * The whole simulation state. Copyable; a copy evolves identically to the
 * original when stepped.
 */
class World
{
public:
    World() = default;

    const SimConfig& config() const
    {
        return m_config;
    }
    const std::vector<Agent>& agents() const
    {
        return m_agents;
    }
    const Agent& agent(int id) const
    {
        return m_agents[static_cast<std::size_t>(id)];
    }
    std::int64_t tick() const
    {
        return m_tick;
    }
    int ticks_per_day() const
    {
        return m_config.ticks_per_day;
    }
    std::int64_t day() const
    {
        return m_tick / m_config.ticks_per_day;
    }
    int population() const
    {
        return static_cast<int>(m_agents.size());
    }
    const std::vector<CityBlock>& cities() const
    {
        return m_cities;
    }

    StateCounts counts() const
    {
        return m_counts;
    }
    int count(HealthState s) const
    {
        return m_counts[static_cast<int>(s)];
    }
    int hospitalized_count() const
    {
        return m_hospitalized;
    }
    int active_infections() const;

    bool lockdown_active() const;

    /// Distances converted to patch units.
    double infectious_radius() const;
    double distancing_radius() const;

    /// Replace the intervention parameters mid-run. Mask and compliance
    /// flags are grown or shrunk to the new rates by random selection.
    void set_interventions(const InterventionParams& params);

    /// Infect up to `count` uniformly chosen healthy agents. Returns the number infected.
    int infect_random_healthy(int count);

    /// Number of agents newly infected during the last step (transmission + imports).
    int new_infections_last_tick() const
    {
        return m_new_infections;
    }

    /// Resampling attempts rejected by distancing during the last step.
    std::int64_t distancing_rejections_last_tick() const
    {
        return m_rejections;
    }

    void set_event_log(std::vector<TransitionEvent>* log)
    {
        m_log = log;
    }

    /// Direct access for tests and for constructing crafted worlds.
    Agent& mutable_agent(int id)
    {
        return m_agents[static_cast<std::size_t>(id)];
    }
    /// Recompute counts and the spatial index after mutable_agent edits.
    void rebuild();

    Rng& rng()
    {
        return m_rng;
    }

    friend World init_world(const SimConfig& config, std::uint64_t seed);
    friend void step(World& world);
    friend Position move_agent(World& world, int id);
    friend void progress_disease(World& world, int id);
    friend void admit_hospital(World& world);

private:
    void set_health(Agent& a, HealthState to);
    void resolve_outcomes();
    void transmit();
    void move_all();
    void assign_flag_fraction(bool Agent::*flag, double pct);

    SimConfig m_config;
    std::vector<Agent> m_agents;
    std::vector<CityBlock> m_cities;
    SpatialIndex m_index;
    StateCounts m_counts{};
    int m_hospitalized = 0;
    std::int64_t m_tick = 0;
    Rng m_rng;
    int m_new_infections     = 0;
    std::int64_t m_rejections = 0;
    std::vector<TransitionEvent>* m_log = nullptr;
    std::vector<int> m_scratch;
};

/// Number of city blocks per side (16 cities as a 4x4 tiling).
inline constexpr int cities_per_side = 4;

/**
 * Build the initial population: uniform random positions, ages per the
 * configured distribution (largest-remainder rounding), a random masked
 * subset, a random non-compliant subset and `initial_infected` asymptomatic
 * agents. Throws ConfigError for invalid configurations.
 */
World init_world(const SimConfig& config, std::uint64_t seed);

/// Split a population across age groups by largest-remainder rounding.
std::array<int, num_age_groups> allocate_age_counts(const AgeArray& distribution, int population);

/// Advance one tick: movement, transmission, progression, hospital admission, outcomes.
void step(World& world);

/// Move one agent according to the current interventions; returns its new position.
Position move_agent(World& world, int id);

/// base * infectivity/100 * penetration^(masks worn by the pair).
double transmission_prob(bool infector_masked, bool susceptible_masked, const DiseaseParams& params);

/// Advance the infection clock of one infected agent and apply onset/quarantine/death scheduling.
void progress_disease(World& world, int id);

/// Admit serious cases while beds are free.
void admit_hospital(World& world);

} // namespace episim

#endif // EPISIM_WORLD_H
