#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace heda {

/// Independent random streams per concern, so adding draws to one never shifts another.
enum class Stream : std::uint64_t { Deployment = 1, Sensing = 2, Collision = 3, Routing = 4, Loss = 5 };

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// mt19937_64 with portable uniform/index helpers. The std distributions are
/// implementation-defined, which would break bit-identical replays across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, Stream stream)
        : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream))))
    {
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in [0, n); n > 0. Multiply-shift, bias below 2^-64 * n.
    std::uint64_t index(std::uint64_t n)
    {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace heda
