// Reproducible random streams. Each stream is a Mersenne Twister seeded by a
// SplitMix64 hash of (master_seed, stream_index), so ensembles are
// reproducible and independent of execution order.

#pragma once

#include <cstdint>
#include <random>

namespace spinrus {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    return splitmix64(master_seed ^ splitmix64(stream_index + 0x61C8864680B583EBULL));
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : RandomStream(derive_seed(master_seed, stream_index)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits; identical across platforms.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace spinrus
