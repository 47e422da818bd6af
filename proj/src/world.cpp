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

#include "episim/world.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace episim
{

namespace
{

/// Maximum displacement per tick, in patches.
constexpr double max_step = 0.2;

/// Distancing upper bound used to size index cells.
constexpr double max_distancing_m = 2.5;

int percent_of(double pct, int n)
{
    return static_cast<int>(std::floor(pct / 100.0 * n + 1e-9));
}

std::int64_t days_to_ticks(double days, int ticks_per_day)
{
    return std::llround(days * ticks_per_day);
}

int city_index(Position p, double grid_size)
{
    const double block = grid_size / cities_per_side;
    const int cx = std::clamp(static_cast<int>(p.x / block), 0, cities_per_side - 1);
    const int cy = std::clamp(static_cast<int>(p.y / block), 0, cities_per_side - 1);
    return cy * cities_per_side + cx;
}

/// Draw `k` distinct elements of `pool` (partial Fisher-Yates), in draw order.
std::vector<int> sample_without_replacement(std::vector<int> pool, int k, Rng& rng)
{
    k = std::min<int>(k, static_cast<int>(pool.size()));
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

} // namespace

std::string_view to_string(HealthState state)
{
    switch (state) {
    case HealthState::Healthy:
        return "healthy";
    case HealthState::Asymptomatic:
        return "asymptomatic";
    case HealthState::LightSymptomatic:
        return "light";
    case HealthState::SeriousSymptomatic:
        return "serious";
    case HealthState::Recovered:
        return "recovered";
    case HealthState::Dead:
        return "dead";
    default:
        return "?";
    }
}

bool is_allowed_transition(HealthState from, HealthState to)
{
    using enum HealthState;
    switch (from) {
    case Healthy:
        return to == Asymptomatic;
    case Asymptomatic:
        return to == LightSymptomatic || to == SeriousSymptomatic;
    case LightSymptomatic:
        return to == Recovered;
    case SeriousSymptomatic:
        return to == Recovered || to == Dead;
    default:
        return false;
    }
}

SpatialIndex::SpatialIndex(double grid_size, double cell_size)
    : m_inv_cell(1.0 / cell_size)
    , m_cells_per_side(std::max(1, static_cast<int>(std::ceil(grid_size / cell_size))))
    , m_cells(static_cast<std::size_t>(m_cells_per_side) * m_cells_per_side)
{
}

int SpatialIndex::cell_coord(double v) const
{
    return std::clamp(static_cast<int>(std::floor(v * m_inv_cell)), 0, m_cells_per_side - 1);
}

std::size_t SpatialIndex::cell_of(Position p) const
{
    return static_cast<std::size_t>(cell_coord(p.y)) * m_cells_per_side + cell_coord(p.x);
}

void SpatialIndex::insert(int id, Position p)
{
    if (static_cast<std::size_t>(id) >= m_cell_of_id.size()) {
        m_cell_of_id.resize(static_cast<std::size_t>(id) + 1, -1);
    }
    const auto cell = cell_of(p);
    m_cells[cell].push_back(id);
    m_cell_of_id[id] = static_cast<int>(cell);
}

void SpatialIndex::remove(int id)
{
    if (static_cast<std::size_t>(id) >= m_cell_of_id.size() || m_cell_of_id[id] < 0) {
        return;
    }
    auto& cell = m_cells[static_cast<std::size_t>(m_cell_of_id[id])];
    auto it    = std::find(cell.begin(), cell.end(), id);
    *it        = cell.back();
    cell.pop_back();
    m_cell_of_id[id] = -1;
}

void SpatialIndex::move(int id, Position to)
{
    const auto b = cell_of(to);
    if (static_cast<int>(b) != m_cell_of_id[id]) {
        remove(id);
        m_cells[b].push_back(id);
        m_cell_of_id[id] = static_cast<int>(b);
    }
}

std::array<int, num_age_groups> allocate_age_counts(const AgeArray& distribution, int population)
{
    std::array<int, num_age_groups> counts{};
    std::array<double, num_age_groups> remainder{};
    int assigned = 0;
    for (int i = 0; i < num_age_groups; ++i) {
        const double exact = distribution[i] * population;
        counts[i]          = static_cast<int>(std::floor(exact + 1e-9));
        remainder[i]       = exact - counts[i];
        assigned += counts[i];
    }
    std::array<int, num_age_groups> order{};
    std::iota(order.begin(), order.end(), 0);
    // largest remainder first, ties to the lower age group
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (int k = 0; assigned < population; ++k) {
        ++counts[order[k % num_age_groups]];
        ++assigned;
    }
    return counts;
}

World init_world(const SimConfig& config, std::uint64_t seed)
{
    config.validate();

    World w;
    w.m_config      = config;
    w.m_config.seed = seed;
    w.m_rng         = Rng(seed);
    Rng& rng        = w.m_rng;

    const double g     = config.grid_size;
    const double block = g / cities_per_side;
    for (int cy = 0; cy < cities_per_side; ++cy) {
        for (int cx = 0; cx < cities_per_side; ++cx) {
            w.m_cities.push_back({cx * block, cy * block, (cx + 1) * block, (cy + 1) * block});
        }
    }
    // the last block edge is pinned to the grid edge so the tiling is exact
    for (auto& c : w.m_cities) {
        if (c.x1 > g - 1e-12) {
            c.x1 = g;
        }
        if (c.y1 > g - 1e-12) {
            c.y1 = g;
        }
    }

    const int n       = config.population;
    const auto counts = allocate_age_counts(config.age_distribution, n);
    std::vector<int> ages;
    ages.reserve(n);
    for (int group = 0; group < num_age_groups; ++group) {
        ages.insert(ages.end(), counts[group], group);
    }
    for (int i = n - 1; i > 0; --i) {
        std::swap(ages[i], ages[rng.below(i + 1)]);
    }

    w.m_agents.resize(n);
    for (int i = 0; i < n; ++i) {
        Agent& a     = w.m_agents[i];
        a.id         = i;
        a.age_group  = ages[i];
        a.position   = {rng.uniform(0, g), rng.uniform(0, g)};
        a.home_city  = city_index(a.position, g);
        a.gender     = rng.bernoulli(0.5) ? Gender::Male : Gender::Female;
    }

    std::vector<int> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);
    for (int id : sample_without_replacement(everyone, percent_of(config.interventions.mask_usage_rate, n), rng)) {
        w.m_agents[id].masked = true;
    }
    for (int id :
         sample_without_replacement(everyone, percent_of(config.interventions.ignore_lockdown_pct, n), rng)) {
        w.m_agents[id].ignores_lockdown = true;
    }
    for (int id : sample_without_replacement(everyone, config.initial_infected, rng)) {
        w.m_agents[id].health          = HealthState::Asymptomatic;
        w.m_agents[id].infection_clock = 0;
    }

    w.rebuild();
    return w;
}

void World::rebuild()
{
    const double radius = std::max(infectious_radius(), max_distancing_m / m_config.metres_per_patch);
    m_index             = SpatialIndex(m_config.grid_size, std::max(1.0, radius));
    m_counts.fill(0);
    m_hospitalized = 0;
    for (const Agent& a : m_agents) {
        ++m_counts[static_cast<int>(a.health)];
        if (a.hospitalized) {
            ++m_hospitalized;
        }
        if (a.alive()) {
            m_index.insert(a.id, a.position);
        }
    }
}

int World::active_infections() const
{
    return count(HealthState::Asymptomatic) + count(HealthState::LightSymptomatic) +
           count(HealthState::SeriousSymptomatic);
}

bool World::lockdown_active() const
{
    return m_config.interventions.lockdown_enabled &&
           m_tick >= days_to_ticks(m_config.interventions.lockdown_delay_days, m_config.ticks_per_day);
}

double World::infectious_radius() const
{
    return m_config.disease.infectious_distance_m / m_config.metres_per_patch;
}

double World::distancing_radius() const
{
    return m_config.interventions.social_distancing_m / m_config.metres_per_patch;
}

void World::assign_flag_fraction(bool Agent::*flag, double pct)
{
    const int target = percent_of(pct, population());
    std::vector<int> with, without;
    for (const Agent& a : m_agents) {
        (a.*flag ? with : without).push_back(a.id);
    }
    const int current = static_cast<int>(with.size());
    if (target > current) {
        for (int id : sample_without_replacement(std::move(without), target - current, m_rng)) {
            m_agents[id].*flag = true;
        }
    }
    else if (target < current) {
        for (int id : sample_without_replacement(std::move(with), current - target, m_rng)) {
            m_agents[id].*flag = false;
        }
    }
}

void World::set_interventions(const InterventionParams& params)
{
    params.validate();
    const InterventionParams old = m_config.interventions;
    m_config.interventions       = params;
    if (params.mask_usage_rate != old.mask_usage_rate) {
        assign_flag_fraction(&Agent::masked, params.mask_usage_rate);
    }
    if (params.ignore_lockdown_pct != old.ignore_lockdown_pct) {
        assign_flag_fraction(&Agent::ignores_lockdown, params.ignore_lockdown_pct);
    }
    if (params.city_confinement && !old.city_confinement) {
        // agents are confined to whichever city they are in when confinement starts
        for (Agent& a : m_agents) {
            a.home_city = city_index(a.position, m_config.grid_size);
        }
    }
}

int World::infect_random_healthy(int count)
{
    if (count <= 0) {
        return 0;
    }
    std::vector<int> healthy;
    for (const Agent& a : m_agents) {
        if (a.health == HealthState::Healthy) {
            healthy.push_back(a.id);
        }
    }
    auto chosen = sample_without_replacement(std::move(healthy), count, m_rng);
    std::sort(chosen.begin(), chosen.end());
    for (int id : chosen) {
        Agent& a          = m_agents[id];
        set_health(a, HealthState::Asymptomatic);
        a.infection_clock = 0;
    }
    m_new_infections += static_cast<int>(chosen.size());
    return static_cast<int>(chosen.size());
}

void World::set_health(Agent& a, HealthState to)
{
    if (m_log != nullptr) {
        m_log->push_back({m_tick, a.id, a.health, to});
    }
    --m_counts[static_cast<int>(a.health)];
    ++m_counts[static_cast<int>(to)];
    a.health = to;
}

double transmission_prob(bool infector_masked, bool susceptible_masked, const DiseaseParams& params)
{
    double p = params.base_transmission_prob * (params.infectivity / 100.0);
    if (infector_masked) {
        p *= params.mask_penetration;
    }
    if (susceptible_masked) {
        p *= params.mask_penetration;
    }
    return p;
}

Position move_agent(World& w, int id)
{
    Agent& a = w.m_agents[id];
    if (!a.alive() || a.quarantined || a.hospitalized) {
        return a.position;
    }
    if (w.lockdown_active() && !a.ignores_lockdown) {
        return a.position;
    }

    const auto& iv = w.m_config.interventions;
    CityBlock bounds{0, 0, w.m_config.grid_size, w.m_config.grid_size};
    if (iv.city_confinement) {
        bounds = w.m_cities[a.home_city];
    }
    const double sd       = w.distancing_radius();
    const double sd2      = sd * sd;
    const int attempts    = sd > 0 ? w.m_config.distancing_attempts : 1;
    const double travel   = w.m_config.travel_prob;

    for (int attempt = 0; attempt < attempts; ++attempt) {
        Position cand;
        if (travel && w.m_rng.bernoulli(travel)) {
            cand = {w.m_rng.uniform(bounds.x0, bounds.x1), w.m_rng.uniform(bounds.y0, bounds.y1)};
        }
        else {
            const double theta = w.m_rng.uniform(0, 2 * std::numbers::pi);
            const double dist  = w.m_rng.uniform(0, max_step);
            cand = {std::clamp(a.position.x + dist * std::cos(theta), bounds.x0, bounds.x1),
                    std::clamp(a.position.y + dist * std::sin(theta), bounds.y0, bounds.y1)};
        }
        if (sd > 0) {
            bool crowded = false;
            w.m_index.for_each_near(cand, sd, [&](int other) {
                if (crowded || other == id) {
                    return;
                }
                const Position q = w.m_agents[other].position;
                const double dx  = q.x - cand.x;
                const double dy  = q.y - cand.y;
                if (dx * dx + dy * dy < sd2) {
                    crowded = true;
                }
            });
            if (crowded) {
                ++w.m_rejections;
                continue;
            }
        }
        w.m_index.move(id, cand);
        a.position = cand;
        return cand;
    }
    return a.position;
}

void World::move_all()
{
    for (int id = 0; id < population(); ++id) {
        move_agent(*this, id);
    }
}

void World::transmit()
{
    const double r  = infectious_radius();
    const double r2 = r * r;
    std::vector<int> newly;
    for (const Agent& src : m_agents) {
        if (!is_infected(src.health) || src.quarantined || src.hospitalized) {
            continue;
        }
        m_scratch.clear();
        m_index.for_each_near(src.position, r, [&](int other) {
            const Agent& dst = m_agents[other];
            if (dst.health != HealthState::Healthy) {
                return;
            }
            const double dx = dst.position.x - src.position.x;
            const double dy = dst.position.y - src.position.y;
            if (dx * dx + dy * dy <= r2) {
                m_scratch.push_back(other);
            }
        });
        std::sort(m_scratch.begin(), m_scratch.end());
        for (int other : m_scratch) {
            Agent& dst = m_agents[other];
            // already infected earlier in this tick
            if (dst.infection_clock < 0) {
                continue;
            }
            if (m_rng.bernoulli(transmission_prob(src.masked, dst.masked, m_config.disease))) {
                dst.infection_clock = -1;
                newly.push_back(other);
            }
        }
    }
    for (int id : newly) {
        Agent& a          = m_agents[id];
        a.infection_clock = 0;
        set_health(a, HealthState::Asymptomatic);
    }
    m_new_infections += static_cast<int>(newly.size());
}

void progress_disease(World& w, int id)
{
    Agent& a = w.m_agents[id];
    if (!is_infected(a.health)) {
        return;
    }
    const auto& cfg = w.m_config;
    const auto& d   = cfg.disease;
    ++a.infection_clock;

    const auto onset = days_to_ticks(d.asymptomatic_days, cfg.ticks_per_day);
    if (a.health != HealthState::Asymptomatic || a.infection_clock < onset) {
        return;
    }
    const bool serious = w.m_rng.bernoulli(d.serious_rate_by_age[a.age_group] / 100.0);
    w.set_health(a, serious ? HealthState::SeriousSymptomatic : HealthState::LightSymptomatic);
    if (w.m_rng.bernoulli(cfg.interventions.isolation_rate / 100.0)) {
        a.quarantined = true;
    }
    if (serious) {
        double p_death = d.model_fatality_by_age[a.age_group] / 100.0;
        if (a.hospitalized) {
            p_death *= cfg.hospital_death_multiplier;
        }
        if (w.m_rng.bernoulli(p_death)) {
            const auto end       = days_to_ticks(d.infection_duration_days, cfg.ticks_per_day);
            const auto remaining = std::max<std::int64_t>(1, end - a.infection_clock);
            const auto offset    = 1 + static_cast<std::int64_t>(w.m_rng.below(static_cast<std::uint64_t>(remaining)));
            // outcomes are resolved against tick + 1 (the time after this step)
            a.death_scheduled_at = w.m_tick + 1 + offset;
        }
    }
}

namespace
{

std::int64_t recovery_ticks(const Agent& a, const SimConfig& cfg)
{
    const double days = cfg.disease.infection_duration_days * (a.hospitalized ? cfg.hospital_recovery_multiplier : 1.0);
    return days_to_ticks(days, cfg.ticks_per_day);
}

} // namespace

void admit_hospital(World& w)
{
    const auto& cfg = w.m_config;
    for (Agent& a : w.m_agents) {
        if (w.m_hospitalized >= cfg.healthcare_capacity) {
            break;
        }
        if (a.health != HealthState::SeriousSymptomatic || a.hospitalized) {
            continue;
        }
        if (!w.m_rng.bernoulli(cfg.hospital_admission_prob)) {
            continue;
        }
        a.hospitalized = true;
        ++w.m_hospitalized;
        if (a.death_scheduled_at) {
            // keep the pending death with probability equal to the multiplier
            if (!w.m_rng.bernoulli(cfg.hospital_death_multiplier)) {
                a.death_scheduled_at.reset();
            }
            else {
                const auto recover_at = w.m_tick + 1 + (recovery_ticks(a, cfg) - a.infection_clock);
                a.death_scheduled_at  = std::min(*a.death_scheduled_at, std::max(recover_at, w.m_tick + 1));
            }
        }
    }
}

void World::resolve_outcomes()
{
    const std::int64_t now = m_tick + 1;
    for (Agent& a : m_agents) {
        if (!is_symptomatic(a.health)) {
            continue;
        }
        if (a.death_scheduled_at && now >= *a.death_scheduled_at) {
            set_health(a, HealthState::Dead);
            if (a.hospitalized) {
                --m_hospitalized;
            }
            a.hospitalized = false;
            a.quarantined  = false;
            a.death_scheduled_at.reset();
            m_index.remove(a.id);
        }
        else if (!a.death_scheduled_at && a.infection_clock >= recovery_ticks(a, m_config)) {
            set_health(a, HealthState::Recovered);
            if (a.hospitalized) {
                --m_hospitalized;
            }
            a.hospitalized = false;
            a.quarantined  = false;
        }
    }
}

void step(World& w)
{
    w.m_new_infections = 0;
    w.m_rejections     = 0;
    w.move_all();
    w.transmit();
    for (int id = 0; id < w.population(); ++id) {
        progress_disease(w, id);
    }
    admit_hospital(w);
    w.resolve_outcomes();
    ++w.m_tick;
}

} // namespace episim
