#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

namespace vmp {

// Random stream used by every solver and the instance generator.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions are implemented here rather than taken from
// <random> because the standard library distributions are allowed to differ
// between vendors, and every result in this project must be reproducible
// from its seed alone.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1), 53 bits of resolution.
    double uniform();
    // Uniform on (0, 1).
    double uniform_open();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::size_t below(std::size_t bound);

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal deviate (Marsaglia polar method).
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Order-sensitive hash of a sequence of 64-bit words, used for seed derivation.
std::uint64_t hash64(std::initializer_list<std::uint64_t> words);

}  // namespace vmp
