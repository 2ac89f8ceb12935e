#pragma once

#include <cstdint>
#include <random>

namespace rectree {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// std::mt19937_64 keyed by (master seed, substream). The key is whitened with
// SplitMix64 so neighbouring substreams start from unrelated states. One
// substream per Monte Carlo replicate makes results independent of the worker
// count.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t substream) : seed_(seed), substream_(substream) {
        std::uint64_t s = seed ^ 0x5851f42d4c957f2dULL;
        std::uint64_t key = splitmix64(s);
        s = key ^ (substream * 0xd1b54a32d192ed03ULL);
        eng_.seed(splitmix64(s));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }
    result_type operator()() { return eng_(); }

    // uniform on [0,1) with 53 random bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, range), Lemire's multiply-shift with rejection
    std::uint64_t below(std::uint64_t range) {
        __uint128_t m = static_cast<__uint128_t>(eng_()) * range;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < range) {
            std::uint64_t t = (0 - range) % range;
            while (lo < t) {
                m = static_cast<__uint128_t>(eng_()) * range;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t substream() const { return substream_; }

private:
    std::uint64_t seed_, substream_;
    std::mt19937_64 eng_;
};

}  // namespace rectree
