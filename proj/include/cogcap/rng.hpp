#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cogcap::rng {

/// splitmix64 step; used to derive independent substream seeds from a
/// (seed, stream-index) pair.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

/// Pseudo-random stream used by the samplers and the frame simulator.
/// mt19937_64 output is pinned by the standard, and the uniform mapping
/// below avoids std::*_distribution, so streams are bit-reproducible
/// across platforms. Not safe for concurrent sharing; one stream per worker.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    Stream(std::uint64_t seed, std::uint64_t stream)
        : engine_(derive_stream_seed(seed, stream)) {}

    /// Uniform draw on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Unit-mean exponential draw.
    double exponential() { return -std::log(uniform01()); }

    /// Unit-mean gamma draw with integer shape m (Erlang), as the scaled
    /// sum of m unit exponentials.
    double unit_mean_erlang(int m) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) sum += exponential();
        return sum / static_cast<double>(m);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace cogcap::rng
