#pragma once

#include <cmath>
#include <cstdint>

namespace risnoma {

// Stateless SplitMix64 step, used to expand seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with all sampling transforms implemented locally, so a given
// (master_seed, stream_id, trial) triple produces the same draw sequence on
// every platform and under any thread schedule. Standard-library
// distributions are implementation-defined and would break that contract.
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t trial) {
        std::uint64_t sm = master_seed;
        sm ^= 0xA0761D6478BD642FULL * (stream_id + 1);
        (void)splitmix64(sm);
        sm += 0xE7037ED1A0B428DBULL * trial;
        s_[0] = splitmix64(sm);
        s_[1] = splitmix64(sm);
        s_[2] = splitmix64(sm);
        s_[3] = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on [0, 2*pi).
    double phase() { return uniform01() * 6.283185307179586476925286766559; }

    // Unit-mean exponential.
    double exponential() { return -std::log1p(-uniform01()); }

    // Standard normal, Marsaglia polar method (pairs cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_cached_ = true;
        return u * f;
    }

    // Gamma(shape, scale), Marsaglia-Tsang squeeze with the shape<1 boost.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            double u = uniform01();
            while (u == 0.0) u = uniform01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    // Nakagami-m amplitude with unit mean power: |x|^2 ~ Gamma(m, 1/m).
    double nakagami_amplitude(double m) { return std::sqrt(gamma(m, 1.0 / m)); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace risnoma
