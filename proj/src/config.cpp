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

#include "episim/config.h"
#include "episim/rng.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace episim
{

namespace
{

std::string format_double(double v)
{
    return fmt::format("{:.9g}", v);
}

std::string format_ages(const AgeArray& values)
{
    std::string out;
    for (int i = 0; i < num_age_groups; ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format_double(values[i]);
    }
    return out;
}

AgeArray parse_ages(std::string_view text)
{
    auto fields = split_list(text);
    if (fields.size() != num_age_groups) {
        throw ConfigError(fmt::format("expected {} comma-separated values, got {}", num_age_groups, fields.size()));
    }
    AgeArray out{};
    for (int i = 0; i < num_age_groups; ++i) {
        out[i] = parse_double(fields[i]);
    }
    return out;
}

struct Field {
    std::string name;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

#define EPISIM_DOUBLE_FIELD(key, member)                                                                             \
    Field                                                                                                            \
    {                                                                                                                \
        key, [](SimConfig& c, std::string_view v) { c.member = parse_double(v); },                                 \
            [](const SimConfig& c) { return format_double(c.member); }                                              \
    }
#define EPISIM_INT_FIELD(key, member)                                                                                \
    Field                                                                                                            \
    {                                                                                                                \
        key, [](SimConfig& c, std::string_view v) { c.member = static_cast<decltype(c.member)>(parse_int(v)); },   \
            [](const SimConfig& c) { return std::to_string(c.member); }                                             \
    }
#define EPISIM_BOOL_FIELD(key, member)                                                                               \
    Field                                                                                                            \
    {                                                                                                                \
        key, [](SimConfig& c, std::string_view v) { c.member = parse_bool(v); },                                   \
            [](const SimConfig& c) { return std::string(c.member ? "true" : "false"); }                             \
    }
#define EPISIM_AGES_FIELD(key, member)                                                                               \
    Field                                                                                                            \
    {                                                                                                                \
        key, [](SimConfig& c, std::string_view v) { c.member = parse_ages(v); },                                   \
            [](const SimConfig& c) { return format_ages(c.member); }                                                \
    }

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> t = {
            EPISIM_AGES_FIELD("age_distribution", age_distribution),
            EPISIM_DOUBLE_FIELD("asymptomatic_days", disease.asymptomatic_days),
            EPISIM_DOUBLE_FIELD("base_transmission_prob", disease.base_transmission_prob),
            EPISIM_BOOL_FIELD("city_confinement", interventions.city_confinement),
            EPISIM_INT_FIELD("distancing_attempts", distancing_attempts),
            EPISIM_DOUBLE_FIELD("grid_size", grid_size),
            EPISIM_INT_FIELD("healthcare_capacity", healthcare_capacity),
            EPISIM_DOUBLE_FIELD("hospital_admission_prob", hospital_admission_prob),
            EPISIM_DOUBLE_FIELD("hospital_death_multiplier", hospital_death_multiplier),
            EPISIM_DOUBLE_FIELD("hospital_recovery_multiplier", hospital_recovery_multiplier),
            EPISIM_DOUBLE_FIELD("ignore_lockdown_pct", interventions.ignore_lockdown_pct),
            EPISIM_DOUBLE_FIELD("infection_duration_days", disease.infection_duration_days),
            EPISIM_DOUBLE_FIELD("infectious_distance_m", disease.infectious_distance_m),
            EPISIM_DOUBLE_FIELD("infectivity", disease.infectivity),
            EPISIM_INT_FIELD("initial_infected", initial_infected),
            EPISIM_DOUBLE_FIELD("isolation_rate", interventions.isolation_rate),
            EPISIM_DOUBLE_FIELD("lockdown_delay_days", interventions.lockdown_delay_days),
            EPISIM_BOOL_FIELD("lockdown_enabled", interventions.lockdown_enabled),
            EPISIM_DOUBLE_FIELD("mask_penetration", disease.mask_penetration),
            EPISIM_DOUBLE_FIELD("mask_usage_rate", interventions.mask_usage_rate),
            EPISIM_INT_FIELD("max_days", max_days),
            EPISIM_DOUBLE_FIELD("metres_per_patch", metres_per_patch),
            EPISIM_AGES_FIELD("model_fatality_by_age", disease.model_fatality_by_age),
            EPISIM_INT_FIELD("population", population),
            EPISIM_INT_FIELD("seed", seed),
            EPISIM_AGES_FIELD("serious_rate_by_age", disease.serious_rate_by_age),
            EPISIM_DOUBLE_FIELD("social_distancing_m", interventions.social_distancing_m),
            EPISIM_INT_FIELD("ticks_per_day", ticks_per_day),
            EPISIM_DOUBLE_FIELD("travel_prob", travel_prob),
            Field{"weather", [](SimConfig& c, std::string_view v) { c.weather = std::string(v); },
                  [](const SimConfig& c) { return c.weather; }},
        };
        std::sort(t.begin(), t.end(), [](const Field& a, const Field& b) { return a.name < b.name; });
        return t;
    }();
    return table;
}

#undef EPISIM_DOUBLE_FIELD
#undef EPISIM_INT_FIELD
#undef EPISIM_BOOL_FIELD
#undef EPISIM_AGES_FIELD

const Field* find_field(std::string_view key)
{
    const auto& table = fields();
    auto it = std::lower_bound(table.begin(), table.end(), key,
                               [](const Field& f, std::string_view k) { return f.name < k; });
    if (it == table.end() || it->name != key) {
        return nullptr;
    }
    return &*it;
}

constexpr std::string_view intervention_keys[] = {"city_confinement",    "ignore_lockdown_pct", "isolation_rate",
                                                  "lockdown_delay_days", "lockdown_enabled",    "mask_usage_rate",
                                                  "social_distancing_m"};

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw ConfigError(message);
    }
}

bool in_range(double v, double lo, double hi)
{
    return std::isfinite(v) && v >= lo && v <= hi;
}

} // namespace

std::string age_group_label(int group)
{
    if (group >= num_age_groups - 1) {
        return "80+";
    }
    return fmt::format("{}-{}", group * 10, group * 10 + 9);
}

AgeArray model_fatality_from_rates(const AgeArray& serious_rate, const AgeArray& fatality_ratio)
{
    AgeArray out{};
    for (int i = 0; i < num_age_groups; ++i) {
        out[i] = serious_rate[i] > 0 ? 100.0 * fatality_ratio[i] / serious_rate[i] : 0.0;
    }
    return out;
}

void DiseaseParams::validate() const
{
    require(infection_duration_days > 0, "infection_duration_days must be positive");
    require(asymptomatic_days >= 0, "asymptomatic_days must be non-negative");
    require(asymptomatic_days < infection_duration_days, "asymptomatic_days must be less than infection_duration_days");
    require(in_range(infectious_distance_m, 0, 1e6), "infectious_distance_m must be non-negative");
    require(in_range(infectivity, 0, 100), "infectivity must be in [0, 100]");
    require(in_range(mask_penetration, 0, 1), "mask_penetration must be in [0, 1]");
    require(in_range(base_transmission_prob, 0, 1), "base_transmission_prob must be in [0, 1]");
    for (int i = 0; i < num_age_groups; ++i) {
        require(in_range(serious_rate_by_age[i], 0, 100), "serious_rate_by_age values must be in [0, 100]");
        require(in_range(model_fatality_by_age[i], 0, 100), "model_fatality_by_age values must be in [0, 100]");
    }
}

void InterventionParams::validate() const
{
    require(in_range(social_distancing_m, 0, 1e6), "social_distancing_m must be non-negative");
    require(in_range(mask_usage_rate, 0, 100), "mask_usage_rate must be in [0, 100]");
    require(in_range(lockdown_delay_days, 0, 1e6), "lockdown_delay_days must be non-negative");
    require(in_range(ignore_lockdown_pct, 0, 100), "ignore_lockdown_pct must be in [0, 100]");
    require(in_range(isolation_rate, 0, 100), "isolation_rate must be in [0, 100]");
}

void SimConfig::validate() const
{
    require(population > 0, "population must be positive");
    require(grid_size > 0 && std::isfinite(grid_size), "grid_size must be positive");
    require(metres_per_patch > 0 && std::isfinite(metres_per_patch), "metres_per_patch must be positive");
    require(ticks_per_day > 0, "ticks_per_day must be positive");
    require(healthcare_capacity >= 0, "healthcare_capacity must be non-negative");
    require(in_range(hospital_death_multiplier, 0, 1), "hospital_death_multiplier must be in [0, 1]");
    require(hospital_recovery_multiplier > 0 && hospital_recovery_multiplier <= 1,
            "hospital_recovery_multiplier must be in (0, 1]");
    require(in_range(hospital_admission_prob, 0, 1), "hospital_admission_prob must be in [0, 1]");
    require(initial_infected >= 0, "initial_infected must be non-negative");
    require(initial_infected <= population, "initial_infected exceeds population");
    require(in_range(travel_prob, 0, 1), "travel_prob must be in [0, 1]");
    require(distancing_attempts >= 1, "distancing_attempts must be at least 1");
    require(max_days > 0, "max_days must be positive");
    double total = 0;
    for (double f : age_distribution) {
        require(std::isfinite(f) && f >= 0, "age_distribution entries must be non-negative");
        total += f;
    }
    require(std::abs(total - 1.0) <= 1e-9, fmt::format("age_distribution sums to {:.12g}, expected 1", total));
    disease.validate();
    interventions.validate();
}

std::string_view trim(std::string_view text)
{
    const auto ws = " \t\r\n";
    auto b = text.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = text.find_last_not_of(ws);
    return text.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view text)
{
    text = trim(text);
    double value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(fmt::format("'{}' is not a number", text));
    }
    return value;
}

long long parse_int(std::string_view text)
{
    text = trim(text);
    long long value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(fmt::format("'{}' is not an integer", text));
    }
    return value;
}

bool parse_bool(std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "on" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "off" || text == "no") {
        return false;
    }
    throw ConfigError(fmt::format("'{}' is not a boolean", text));
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value)
{
    const Field* field = find_field(trim(key));
    if (field == nullptr) {
        throw ConfigError(fmt::format("unknown key '{}'", trim(key)));
    }
    try {
        field->set(config, trim(value));
    }
    catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", field->name, e.what()));
    }
}

bool is_intervention_key(std::string_view key)
{
    return std::find(std::begin(intervention_keys), std::end(intervention_keys), key) != std::end(intervention_keys);
}

void set_intervention_value(InterventionParams& params, std::string_view key, std::string_view value)
{
    key = trim(key);
    if (!is_intervention_key(key)) {
        throw ConfigError(fmt::format("unknown intervention key '{}'", key));
    }
    SimConfig scratch;
    scratch.interventions = params;
    set_config_value(scratch, key, value);
    params = scratch.interventions;
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) {
            k.push_back(f.name);
        }
        return k;
    }();
    return keys;
}

SimConfig parse_config(std::string_view text, const std::string& source)
{
    SimConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, line_no));
        }
        try {
            set_config_value(config, view.substr(0, eq), view.substr(eq + 1));
        }
        catch (const ConfigError& e) {
            throw ConfigError(fmt::format("{}:{}: {}", source, line_no, e.what()));
        }
    }
    config.validate();
    return config;
}

SimConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open config file '{}'", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

std::string canonical_config(const SimConfig& config)
{
    std::string out;
    for (const auto& f : fields()) {
        if (f.name == "seed") {
            continue;
        }
        out += f.name;
        out += '=';
        out += f.get(config);
        out += '\n';
    }
    return out;
}

std::uint64_t config_hash(const SimConfig& config, std::uint64_t seed)
{
    // FNV-1a over the canonical text, then mixed with the seed
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_config(config)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return hash_combine(h, seed);
}

} // namespace episim
