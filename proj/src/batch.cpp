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

#include "episim/batch.h"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

namespace episim
{

namespace
{

std::array<double, num_factors> factors_of(const SimConfig& config)
{
    std::array<double, num_factors> f{};
    for (Factor factor : all_factors) {
        f[static_cast<int>(factor)] = factor_value(config, factor);
    }
    return f;
}

double elapsed_ms(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace

ResultCache::ResultCache(SimConfig base)
    : m_base(std::move(base))
{
}

SimConfig ResultCache::config_for(const std::array<double, num_factors>& factors) const
{
    SimConfig c = m_base;
    for (Factor f : all_factors) {
        apply_factor(c, f, factors[static_cast<int>(f)]);
    }
    return c;
}

std::optional<RunOutcome> ResultCache::lookup(const SimConfig& config, std::uint64_t seed) const
{
    const auto key = config_hash(config, seed);
    std::shared_lock lock(m_mutex);
    auto it = m_entries.find(key);
    if (it == m_entries.end()) {
        return std::nullopt;
    }
    return it->second.outcome;
}

void ResultCache::store(const SimConfig& config, std::uint64_t seed, const RunOutcome& outcome)
{
    const auto key = config_hash(config, seed);
    Entry entry{outcome, std::nullopt, seed};
    const auto f = factors_of(config);
    if (canonical_config(config_for(f)) == canonical_config(config)) {
        entry.factors = f;
    }
    std::unique_lock lock(m_mutex);
    m_entries.insert_or_assign(key, std::move(entry));
}

std::size_t ResultCache::size() const
{
    std::shared_lock lock(m_mutex);
    return m_entries.size();
}

std::vector<std::uint64_t> ResultCache::seeds() const
{
    std::set<std::uint64_t> s;
    std::shared_lock lock(m_mutex);
    for (const auto& [key, e] : m_entries) {
        if (e.factors) {
            s.insert(e.seed);
        }
    }
    return {s.begin(), s.end()};
}

std::size_t ResultCache::load(std::istream& in, std::vector<std::string>* warnings)
{
    auto warn = [&](int line, const std::string& what) {
        if (warnings != nullptr) {
            warnings->push_back(fmt::format("cache line {}: {}; row skipped", line, what));
        }
    };

    std::string raw;
    int line_no = 0;
    bool have_header = false;
    std::size_t loaded = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (trim(raw).empty()) {
            continue;
        }
        if (!have_header) {
            if (trim(raw) != cache_csv_header) {
                throw InputError(fmt::format("not a result cache: expected header '{}'", cache_csv_header));
            }
            have_header = true;
            continue;
        }
        const auto fields = split_list(raw);
        if (fields.size() != 6) {
            warn(line_no, fmt::format("expected 6 fields, got {}", fields.size()));
            continue;
        }
        std::array<double, num_factors> f{};
        std::uint64_t seed = 0;
        double peak        = 0;
        try {
            for (int i = 0; i < num_factors; ++i) {
                f[i] = parse_double(fields[i]);
            }
            const long long s = parse_int(fields[4]);
            if (s < 0) {
                throw ConfigError("negative seed");
            }
            seed = static_cast<std::uint64_t>(s);
            peak = parse_double(fields[5]);
            if (!(peak >= 0 && peak <= 100)) {
                throw ConfigError(fmt::format("peak {} outside [0, 100]", peak));
            }
            config_for(f).validate();
        }
        catch (const ConfigError& e) {
            warn(line_no, e.what());
            continue;
        }
        store(config_for(f), seed, RunOutcome{peak, std::nullopt, 0});
        ++loaded;
    }
    return loaded;
}

std::size_t ResultCache::load(const std::filesystem::path& path, std::vector<std::string>* warnings)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open cache file '{}'", path.string()));
    }
    return load(in, warnings);
}

void ResultCache::save(std::ostream& out) const
{
    std::vector<std::pair<std::array<double, num_factors>, std::pair<std::uint64_t, double>>> rows;
    {
        std::shared_lock lock(m_mutex);
        for (const auto& [key, e] : m_entries) {
            if (e.factors) {
                rows.push_back({*e.factors, {e.seed, e.outcome.peak_pct}});
            }
        }
    }
    std::sort(rows.begin(), rows.end());
    out << cache_csv_header << '\n';
    for (const auto& [f, rest] : rows) {
        out << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{},{:.17g}\n", f[0], f[1], f[2], f[3], rest.first,
                           rest.second);
    }
}

void ResultCache::save(const std::filesystem::path& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw InputError(fmt::format("cannot write cache file '{}'", path.string()));
    }
    save(out);
}

int default_workers()
{
    if (const char* env = std::getenv("EPISIM_THREADS")) {
        try {
            const auto n = parse_int(env);
            if (n >= 1) {
                return static_cast<int>(n);
            }
        }
        catch (const ConfigError&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

BatchReport run_batch(const std::vector<Job>& jobs, int workers, ResultCache* cache)
{
    if (workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    {
        std::set<std::int64_t> ids;
        for (const auto& job : jobs) {
            if (!ids.insert(job.job_id).second) {
                throw ConfigError(fmt::format("duplicate job_id {}", job.job_id));
            }
        }
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<JobRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            JobRecord& rec = records[i];
            rec.job_id     = job.job_id;
            rec.seed       = job.seed;
            const auto t0  = std::chrono::steady_clock::now();
            try {
                if (cache != nullptr) {
                    if (auto hit = cache->lookup(job.config, job.seed)) {
                        rec.outcome     = *hit;
                        rec.cache_hit   = true;
                        rec.duration_ms = elapsed_ms(t0);
                        continue;
                    }
                }
                const TimeSeries series = run_simulation(job.config, job.seed, job.max_ticks);
                rec.outcome.peak_pct     = peak_infection(series);
                rec.outcome.final_counts = series.rows.back().counts;
                rec.outcome.ticks        = series.rows.back().tick;
                if (cache != nullptr) {
                    cache->store(job.config, job.seed, rec.outcome);
                }
            }
            catch (const std::exception& e) {
                rec.ok    = false;
                rec.error = e.what();
            }
            rec.duration_ms = elapsed_ms(t0);
        }
    };

    const int n_threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), jobs.size()));
    if (n_threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    BatchReport report;
    report.records = std::move(records);
    std::sort(report.records.begin(), report.records.end(),
              [](const JobRecord& a, const JobRecord& b) { return a.job_id < b.job_id; });
    for (const auto& r : report.records) {
        if (!r.ok) {
            ++report.failures;
        }
        else if (r.cache_hit) {
            ++report.cache_hits;
        }
        else {
            ++report.simulations_run;
        }
    }
    report.wall_ms = elapsed_ms(start);
    return report;
}

void write_report_csv(std::ostream& out, const BatchReport& report, bool include_timing)
{
    out << "job_id,seed,status,peak_pct,healthy,asymptomatic,light,serious,recovered,dead";
    if (include_timing) {
        out << ",cache_hit,duration_ms";
    }
    out << '\n';
    for (const auto& r : report.records) {
        out << r.job_id << ',' << r.seed << ',' << (r.ok ? "ok" : "failed") << ',';
        if (r.ok) {
            out << fmt::format("{:.6f}", r.outcome.peak_pct);
        }
        for (int s = 0; s < num_health_states; ++s) {
            out << ',';
            if (r.ok && r.outcome.final_counts) {
                out << (*r.outcome.final_counts)[s];
            }
        }
        if (include_timing) {
            out << ',' << (r.cache_hit ? 1 : 0) << ',' << fmt::format("{:.3f}", r.duration_ms);
        }
        out << '\n';
    }
}

} // namespace episim
