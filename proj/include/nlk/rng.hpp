#pragma once

#include <cstdint>
#include <random>

#include "nlk/vec.hpp"

namespace nlk {

/// splitmix64; used to derive independent substream seeds from (seed, tags).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

/// FNV-1a, for keying RNG streams on stable string identifiers.
inline std::uint64_t hash_str(const char* s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
    return h;
}

/// Deterministic stream with hand-rolled distributions. std::mt19937_64 has a
/// pinned algorithm; avoiding std distributions keeps draws identical across
/// standard libraries as well.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Uniform point on S^{d-1}. d = 1 gives +-1, d = 2/3 use polar forms,
    /// larger d normalizes a Gaussian draw.
    Vec unit_sphere(int d) {
        Vec w(d);
        if (d == 1) {
            w[0] = (eng_() & 1u) ? 1.0 : -1.0;
            return w;
        }
        if (d == 2) {
            double th = 2.0 * 3.141592653589793238462643 * uniform01();
            w[0] = std::cos(th);
            w[1] = std::sin(th);
            return w;
        }
        if (d == 3) {
            double z = 2.0 * uniform01() - 1.0;
            double th = 2.0 * 3.141592653589793238462643 * uniform01();
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            w[0] = r * std::cos(th);
            w[1] = r * std::sin(th);
            w[2] = z;
            return w;
        }
        double n2 = 0.0;
        while (n2 == 0.0) {
            for (int i = 0; i < d; ++i) w[i] = normal();
            n2 = norm_sq(w);
        }
        return w * (1.0 / std::sqrt(n2));
    }

    double normal() {
        // Box-Muller; one value per call keeps the stream layout simple.
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643 * u2);
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace nlk
