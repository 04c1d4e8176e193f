#pragma once

#include <cstdint>

namespace geodiam {

/// xorshift64* generator (Vigna 2016): shifts 12, 25, 27 and output multiplier
/// 0x2545F4914F6CDD1D. The state is seeded through one splitmix64 step
/// (increment 0x9E3779B97F4A7C15, mixers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB)
/// so that every 64-bit seed, including 0, yields a non-zero state.
class Xorshift64Star {
public:
    using result_type = std::uint64_t;

    explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed))
    {
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) { return lo + static_cast<int>((*this)() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
};

} // namespace geodiam
