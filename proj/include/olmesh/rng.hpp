#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace olmesh {

namespace detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based random stream.
///
/// A stream is identified by `(seed, stream_index)`; the i-th draw is a pure
/// function of the key and i, so sequences are identical on every platform and
/// independent of how Monte-Carlo work is split across threads. `substream`
/// derives child keys for nested sampling loops (cell, sample, ...).
///
/// Distributions are implemented here rather than through <random> because
/// the standard distributions are not specified bit-for-bit across library
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream_index = 0) noexcept
        : seed_(seed),
          stream_(stream_index),
          key_(detail::mix64(detail::mix64(seed) ^ (stream_index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_; }

    /// Independent child stream; same parent and index always give the same child.
    Rng substream(std::uint64_t index) const noexcept {
        Rng child;
        child.seed_ = seed_;
        child.stream_ = index;
        child.key_ = detail::mix64(key_ ^ detail::mix64(index + 0x632be59bd9b4e019ULL));
        return child;
    }

    std::uint64_t next_u64() noexcept {
        ++counter_;
        return detail::mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        // Lemire-style rejection keeps the result unbiased.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal deviate (Box-Muller).
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace olmesh
