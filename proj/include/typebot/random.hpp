#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace typebot {

// Mixes a 64-bit value (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t value);

// Derives an independent child seed, e.g. per message or per plan stage.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t salt);

// FNV-1a; used to turn words and labels into salts.
std::uint64_t hash_string(std::string_view text);

// Seeded stream with platform-independent transforms. The engine is
// bit-specified by the standard; the distributions are written out here
// because std::*_distribution output differs between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform();

    // Uniform in [lo, hi].
    double uniform(double lo, double hi);

    // Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    // Uniform integer in [lo, hi] (inclusive).
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal, Marsaglia polar method.
    double normal();

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace typebot
