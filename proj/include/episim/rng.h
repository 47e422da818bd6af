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

#ifndef EPISIM_RNG_H
#define EPISIM_RNG_H

#include <cstdint>
#include <random>

namespace episim
{

/// SplitMix64 finalizer. Used for seed derivation and cache keys.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Combine two 64-bit values into one well-mixed value.
constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b)
{
    return mix64(a ^ (mix64(b) + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

/**
 * Seeded random source for one simulation.
 *
 * The engine output of std::mt19937_64 is fully specified by the standard,
 * but the std distributions are not, so all conversions to doubles and
 * bounded integers are done here. This keeps a (config, seed) pair
 * reproducible across standard library implementations.
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed = 0)
        : m_engine(mix64(seed))
    {
    }

    std::uint64_t next_u64()
    {
        return m_engine();
    }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform()
    {
        return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n)
    {
        // rejection on the top of the range avoids modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = m_engine();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p)
    {
        return uniform() < p;
    }

    bool operator==(const Rng& other) const = default;

private:
    std::mt19937_64 m_engine;
};

} // namespace episim

#endif // EPISIM_RNG_H
