#pragma once

// Seeded, stream-stable random sampling.
//
// The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
// hashed through a fixed finalizer. The sequence produced by a given seed is
// part of this library's contract and will not change between releases;
// results in reports and tables are reproducible bit-for-bit.
// Normal variates come from the Box-Muller transform applied to the same
// stream (two uniforms per pair, the second deviate is cached).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fnn {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    double normal(double mean, double std) {
        if (have_cached_) {
            have_cached_ = false;
            return mean + std * cached_;
        }
        // Box-Muller; u1 is kept away from 0 so the log is finite.
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * pi_ * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return mean + std * (r * std::cos(theta));
    }

private:
    static constexpr double pi_ = 3.14159265358979323846;
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

inline std::vector<double> sample_uniform(std::uint64_t seed, std::size_t count,
                                          double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("sample_uniform: need hi > lo");
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = rng.uniform(lo, hi);
    return out;
}

inline std::vector<double> sample_normal(std::uint64_t seed, std::size_t count,
                                         double mean, double std) {
    if (std < 0.0) throw std::invalid_argument("sample_normal: need std >= 0");
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = rng.normal(mean, std);
    return out;
}

}  // namespace fnn
