#pragma once

#include <cmath>
#include <cstdint>

namespace spca::rng {

// Counter-based generator: value at position `index` of the stream keyed by
// `seed`. This is the SplitMix64 output function applied to
// seed + (index+1) * gamma, so any element of the stream can be produced
// independently of the others. Used for all data generation so that results
// are reproducible regardless of evaluation order or thread count.
inline std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in the open interval (0,1): 53 high bits, offset by half an ulp.
inline double uniform(std::uint64_t seed, std::uint64_t index) {
    return (static_cast<double>(at(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform in (-1,1).
inline double symmetric_uniform(std::uint64_t seed, std::uint64_t index) {
    return 2.0 * uniform(seed, index) - 1.0;
}

// Standard normal via the Box-Muller transform; consumes stream positions
// 2*index and 2*index+1.
inline double gaussian(std::uint64_t seed, std::uint64_t index) {
    const double u1 = uniform(seed, 2 * index);
    const double u2 = uniform(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692528676655900577 * u2);
}

// Seed for a derived stream (sweep cells, graph corpus entries, ...).
inline std::uint64_t derive(std::uint64_t base_seed, std::uint64_t index) {
    return at(base_seed, index ^ 0xd1b54a32d192ed03ULL);
}

// Stateful convenience wrapper over the counter interface.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return at(seed_, counter_++); }
    double next_uniform() { return uniform(seed_, counter_++); }
    double next_symmetric() { return symmetric_uniform(seed_, counter_++); }
    double next_gaussian() { return gaussian(seed_, counter_++); }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace spca::rng
