#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rankdep {

/// SplitMix64 finalizer. Used to derive well-separated stream seeds from
/// (master seed, counter) pairs.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the
/// standard, and the uniform/normal transforms are implemented here rather
/// than with std::*_distribution (whose output is implementation-defined).
/// A fixed seed therefore yields the same draws on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(mix64(seed)) {}

    /// Stream for one Monte Carlo iteration: seeds derived by mixing the
    /// iteration counter into the master seed, so iteration i draws the
    /// same values no matter which worker runs it.
    static RngStream for_iteration(std::uint64_t master_seed, std::uint64_t iteration) {
        return RngStream(mix64(master_seed ^ mix64(iteration + 1)));
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; never returns 0, safe under log().
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace rankdep
