#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gfnoma {

// Identifies one deterministic draw sequence. Identical (master_seed,
// stream_index) pairs always produce identical sequences, so Monte Carlo
// replications can run in parallel and still merge to the same result.
struct RngSpec {
    std::uint64_t master_seed = 42;
    std::uint64_t stream_index = 0;

    RngSpec substream(std::uint64_t k) const {
        return RngSpec{master_seed, stream_index * 0x10001ull + k + 1};
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(const RngSpec& spec) {
    return std::mt19937_64(splitmix64(spec.master_seed ^ splitmix64(spec.stream_index)));
}

// Uniform in [0,1), 53-bit resolution. Avoids std::uniform_real_distribution
// so sequences are identical across standard library implementations.
inline double next_u01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
inline std::uint64_t next_index(std::mt19937_64& eng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % n;
}

// Unit-mean exponential draw, strictly positive (midpoint offset keeps the
// log argument inside (0,1)).
inline double next_exp(std::mt19937_64& eng) {
    const double u = (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
    return -std::log(u);
}

} // namespace gfnoma
