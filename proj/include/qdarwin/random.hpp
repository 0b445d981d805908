#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace qdarwin {

/// SplitMix64. Small, fast, and good enough for Monte-Carlo averages; every
/// sample gets its own stream derived from the master seed and its
/// coordinates, so results never depend on scheduling.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

/// Seed for a stream identified by a master seed and a list of coordinates.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

// Stream tags keep the different estimators from sharing random numbers.
enum class StreamTag : std::uint64_t {
    subset_sampling = 1,
    fresh_draw = 2,
    biased_draw = 3,
    redundancy_draw = 4,
    pvector = 5,
};

}  // namespace qdarwin
