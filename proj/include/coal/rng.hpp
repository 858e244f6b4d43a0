#pragma once

#include <cstdint>

namespace coal {

/// Identifies one reproducible random stream: (seed, stream) pins the
/// trajectory bit-for-bit, independent of thread scheduling.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// splitmix64: counter-based, trivially splittable by stream offset.
class Rng {
public:
    explicit Rng(RngSpec spec) {
        // Decorrelate streams by running the seed through one mixing round
        // per component before combining.
        state_ = mix(spec.seed) ^ mix(spec.stream + 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace coal
