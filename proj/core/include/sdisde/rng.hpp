#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sdisde {

/// Seeded pseudo-random stream.
///
/// All variates are derived from the raw 64-bit output of a Mersenne twister
/// with hand-written transforms, so a seed reproduces the same sequence on any
/// conforming standard library (std:: distributions are implementation
/// defined).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer on [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);
    /// Standard normal (polar Box-Muller, spare value cached).
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }
    /// Standard Cauchy by inversion.
    double cauchy();
    double cauchy(double location, double scale) { return location + scale * cauchy(); }

    /// Child stream for a named purpose. Does not consume draws from *this.
    RngStream child(std::string_view purpose) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of a tag.
std::uint64_t hash_tag(std::string_view tag) noexcept;

/// Seed for run `run_index` of an experiment with `master_seed`.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

/// Seed for a purpose-specific sub-stream of a run.
std::uint64_t derive_stream_seed(std::uint64_t run_seed, std::string_view purpose) noexcept;

} // namespace sdisde
