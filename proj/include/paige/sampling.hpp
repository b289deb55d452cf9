#pragma once
/**
 * @file sampling.hpp
 * @brief Sweep modes and the seeded sample stream shared by every sampled check.
 *
 * The seed-to-sequence mapping is fixed: a std::mt19937_64 engine seeded with
 * the 64-bit seed, and each draw in [0, n) taken as `engine() % n`. The
 * engine's output sequence is pinned by the C++ standard, so samples are
 * reproducible across platforms and releases.
 */

#include <cstdint>
#include <random>
#include <variant>

namespace paige {

struct Exhaustive {};

struct Sampled {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

using SweepMode = std::variant<Exhaustive, Sampled>;

inline bool is_exhaustive(const SweepMode& mode) noexcept { return std::holds_alternative<Exhaustive>(mode); }

class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish draw in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    /// Uniform-ish draw in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace paige
