#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace evacsim {

/// Deterministic random stream.  One instance per simulation run; every random
/// decision of that run draws from it in a fixed order.
///
/// mt19937_64 output is pinned by the C++ standard, and all derived draws below
/// are implemented by hand, so a (scenario, seed) pair produces the same stream
/// on every platform.  std::uniform_int_distribution and friends are avoided on
/// purpose: their draw sequences differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 usable bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, bound); bound must be >= 1.
    /// Multiply-shift with rejection, so the result is unbiased.
    std::uint64_t uniform_int(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Fisher-Yates; always consumes exactly size-1 draws for a given size.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace evacsim
