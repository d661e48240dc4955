// rng.hpp
// Deterministic random numbers. Doubles are produced from raw mt19937_64
// bits so that streams are identical across platforms and standard
// libraries (std::uniform_real_distribution is not portable bit-for-bit).

#pragma once

#include <cstdint>
#include <random>

namespace witnesskit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// Splitting rule for independent per-task streams: the master seed plus
/// the task index seeds a fresh generator.
inline Rng rng_for_task(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(master_seed + index);
}

}  // namespace witnesskit
