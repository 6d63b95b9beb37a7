#pragma once

#include <cstdint>

namespace hetfs {

// Splitmix64 stream. Used everywhere randomness is needed so that output is
// bit-identical across platforms and standard-library versions (the C++
// <random> distributions are implementation-defined, the engines are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Rejection-free modulo is fine here: bound is
    // tiny (node degrees, candidate counts) relative to 2^64.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Mixes a base seed with a stream index into an independent stream seed.
// Monte-Carlo walk i always draws from stream(seed, i), so estimates do not
// depend on how walks are partitioned across workers.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL);
    z = (z ^ (z >> 32)) * 0xd6e8feb86659fd93ULL;
    z = (z ^ (z >> 32)) * 0xd6e8feb86659fd93ULL;
    return z ^ (z >> 32);
}

}  // namespace hetfs
