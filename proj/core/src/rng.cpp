#include "sdisde/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sdisde/errors.hpp"

namespace sdisde {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_tag(std::string_view tag) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
    return mix64(mix64(master_seed) ^ mix64(run_index ^ 0x5851f42d4c957f2dULL));
}

std::uint64_t derive_stream_seed(std::uint64_t run_seed, std::string_view purpose) noexcept {
    return mix64(mix64(run_seed) ^ hash_tag(purpose));
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) {
        throw ContractViolation("uniform_index: empty range");
    }
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw = engine_();
    while (draw >= limit) {
        draw = engine_();
    }
    return static_cast<std::size_t>(draw % range);
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double RngStream::cauchy() {
    double u = uniform();
    while (u == 0.0) {
        u = uniform();
    }
    return std::tan(std::numbers::pi * (u - 0.5));
}

RngStream RngStream::child(std::string_view purpose) const {
    return RngStream(derive_stream_seed(seed_, purpose));
}

} // namespace sdisde
