#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dualprism {

/// Deterministic random stream used everywhere randomness is needed.
///
/// The generator is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard, and every derived draw (uniform, Bernoulli, normal, bounded
/// integer) is implemented here rather than through std::*_distribution,
/// whose algorithms are implementation-defined. Given the same seed, the
/// stream of values is therefore reproducible across standard libraries.
///
/// Consumption contract per draw:
///   - uniform01:       one 64-bit word
///   - bernoulli:       one 64-bit word
///   - standard_normal: two 64-bit words (Box-Muller, cosine branch)
///   - next_below:      one word, plus rejections (rare for small bounds)
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53 bits of randomness.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal deviate via Box-Muller. Consumes exactly two words
    /// except when the first uniform is 0 (probability 2^-53), which is
    /// redrawn to keep log() finite.
    double standard_normal() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Uniform integer in [0, bound). Unbiased via rejection on the top of
    /// the 64-bit range. bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return x % bound;
    }

private:
    std::mt19937_64 gen_;
};

/// Collapse two seed components into one stream seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace dualprism
