#pragma once

#include "leibniz/matrix.hpp"

#include <cstdint>

namespace leibniz {

// Deterministic, platform-independent sampling. Every randomized routine takes
// an explicit seed and derives a per-trial stream with splitmix64, so results
// do not depend on call order or worker count.

inline std::uint64_t splitmix64_next(std::uint64_t& state)
{
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SmallIntSampler {
public:
    SmallIntSampler(std::uint64_t seed, std::uint64_t stream_index)
        : state_(seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1)))
    {
        splitmix64_next(state_);
    }

    /// Uniform-ish integer in [lo, hi].
    long long int_in(long long lo, long long hi)
    {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(splitmix64_next(state_) % span);
    }

    /// Nonzero integer in [-bound, bound].
    long long nonzero_int(long long bound)
    {
        const long long magnitude = int_in(1, bound);
        return int_in(0, 1) == 0 ? magnitude : -magnitude;
    }

    /// Vector with integer coordinates in [-5, 5].
    Vec vector(std::size_t dim)
    {
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i)
            v[i] = Rational(int_in(-5, 5));
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace leibniz
