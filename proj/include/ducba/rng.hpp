#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ducba {

// All randomness in the pipeline flows through this generator so that runs
// are reproducible bit-for-bit regardless of platform or standard library.
// Core generator: xoshiro256** (Blackman/Vigna), seeded through SplitMix64.
// Substreams are derived from a master seed plus a list of integer tags, so
// e.g. each (seed, epsilon, client) combination owns an independent stream.

// Fixed substream tags so independent pipeline stages never share a stream.
namespace stream_tag {
inline constexpr uint64_t split = 1;
inline constexpr uint64_t perturb = 2;
inline constexpr uint64_t synth = 3;
}  // namespace stream_tag

struct SplitMix64 {
    uint64_t state;

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Mixes a master seed with tag values into a single substream seed.
inline uint64_t derive_stream_seed(uint64_t seed, std::initializer_list<uint64_t> tags) {
    SplitMix64 sm{seed};
    uint64_t h = sm.next();
    for (uint64_t t : tags) {
        h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        SplitMix64 mix{h};
        h = mix.next();
    }
    return h;
}

class Rng {
public:
    explicit Rng(uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    static Rng stream(uint64_t seed, std::initializer_list<uint64_t> tags) {
        return Rng(derive_stream_seed(seed, tags));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) by rejection sampling.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = -bound % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<uint64_t, 4> s_{};
};

}  // namespace ducba
