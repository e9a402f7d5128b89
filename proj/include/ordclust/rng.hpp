#ifndef ORDCLUST_RNG_HPP
#define ORDCLUST_RNG_HPP

#include <cstdint>
#include <random>

namespace ordclust {

// Seeded random stream. Doubles are produced from raw mt19937_64 bits so
// that a given seed yields the same sequence on every platform; the
// standard does not pin down uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // splitmix64-style mix; used to derive independent streams (e.g. restart
    // attempts) from one user-facing seed.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ordclust

#endif  // ORDCLUST_RNG_HPP
