#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "foelner/small_matrix.hpp"

namespace foelner {

// mt19937_64 with portable uniform/Gaussian draws, so seeded runs agree
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

    double gaussian() {
        // Box-Muller; 1 - u keeps the log argument positive.
        const double u = 1.0 - uniform();
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    }

    Complex complex_gaussian() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 engine_;
};

// splitmix64 step, for deriving independent per-item seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace foelner
