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

#ifndef EPISIM_BATCH_H
#define EPISIM_BATCH_H

#include "episim/factors.h"
#include "episim/simulation.h"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace episim
{

/// One fully specified simulation run.
struct Job {
    std::int64_t job_id = 0;
    SimConfig config;
    std::uint64_t seed     = 0;
    std::int64_t max_ticks = 0;
};

/// What a run leaves behind.
struct RunOutcome {
    double peak_pct = 0;
    std::optional<StateCounts> final_counts; ///< absent for results loaded from a cache file
    std::int64_t ticks = 0;
};

/**
 * Memoized run outcomes keyed by config_hash(config, seed).
 *
 * Concurrent lookups share a reader lock; stores are serialized. Entries
 * whose config is the base config with only the four factors changed can be
 * persisted as `sd,mask,lockdown_delay,isolation,seed,peak_pct` rows.
 */
class ResultCache
{
public:
    explicit ResultCache(SimConfig base = {});

    std::optional<RunOutcome> lookup(const SimConfig& config, std::uint64_t seed) const;
    void store(const SimConfig& config, std::uint64_t seed, const RunOutcome& outcome);

    std::size_t size() const;
    const SimConfig& base() const
    {
        return m_base;
    }

    /// Config the persisted row (factor values) stands for.
    SimConfig config_for(const std::array<double, num_factors>& factors) const;

    /**
     * Merge rows from a cache CSV. Corrupt rows are skipped and described in
     * `warnings`; a missing file is an InputError. Returns the number of rows loaded.
     */
    std::size_t load(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);
    std::size_t load(std::istream& in, std::vector<std::string>* warnings = nullptr);

    /// Write all persistable entries, sorted by factors then seed.
    void save(const std::filesystem::path& path) const;
    void save(std::ostream& out) const;

    /// Simulation seeds present among persistable entries.
    std::vector<std::uint64_t> seeds() const;

private:
    struct Entry {
        RunOutcome outcome;
        std::optional<std::array<double, num_factors>> factors; ///< set when persistable
        std::uint64_t seed;
    };

    SimConfig m_base;
    mutable std::shared_mutex m_mutex;
    std::unordered_map<std::uint64_t, Entry> m_entries;
};

inline constexpr const char* cache_csv_header = "sd,mask,lockdown_delay,isolation,seed,peak_pct";

struct JobRecord {
    std::int64_t job_id = 0;
    std::uint64_t seed  = 0;
    bool ok             = true;
    std::string error;
    RunOutcome outcome;
    bool cache_hit     = false;
    double duration_ms = 0;
};

struct BatchReport {
    std::vector<JobRecord> records; ///< ordered by job_id
    std::size_t cache_hits      = 0;
    std::size_t simulations_run = 0;
    std::size_t failures        = 0;
    double wall_ms              = 0;
};

/// Worker count: EPISIM_THREADS if set, otherwise hardware concurrency (at least 1).
int default_workers();

/**
 * Execute every job on `workers` threads. Cached (config, seed) pairs are
 * reused, misses are simulated and stored. A job that throws is reported
 * as failed; the others still run. Results do not depend on worker count.
 */
BatchReport run_batch(const std::vector<Job>& jobs, int workers, ResultCache* cache = nullptr);

/// One row per job: job_id,seed,status,peak_pct,<final counts>; timing only when requested.
void write_report_csv(std::ostream& out, const BatchReport& report, bool include_timing = false);

} // namespace episim

#endif // EPISIM_BATCH_H
