#ifndef OSC_RNG_HPP
#define OSC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace osc {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser: a bijective 64-bit avalanche mixer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds a sequence of words into one seed: h <- splitmix64(h ^ word) for each word.
/// Used for every derived seed (per run, per point, per replicate).
constexpr std::uint64_t mix64(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t w : words) h = splitmix64(h ^ w);
    return h;
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64({a, b}); }

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

/// Uniform double in [0, 1) from the top 53 bits; identical across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection; identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

/// Standard normal draw (Box-Muller, one variate per call).
inline double standard_normal(Rng& rng) {
    constexpr double two_pi = 6.283185307179586476925;
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace osc

#endif  // OSC_RNG_HPP
