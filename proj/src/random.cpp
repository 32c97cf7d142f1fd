#include "vmplace/random.hpp"

#include <cmath>
#include <stdexcept>

namespace vmp {

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open()
{
    // (k + 0.5) / 2^53 never hits either endpoint.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("Rng::below: bound must be positive");

    // Rejection below 2^64 mod bound keeps the modulo unbiased.
    const auto range = static_cast<std::uint64_t>(bound);
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t x = engine_();
    while (x < threshold)
        x = engine_();
    return static_cast<std::size_t>(x % range);
}

double Rng::normal()
{
    if (spare_) {
        const double value = *spare_;
        spare_.reset();
        return value;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    return u * factor;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash64(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t w : words)
        h = mix64(h ^ mix64(w));
    return h;
}

}  // namespace vmp
