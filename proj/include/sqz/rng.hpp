#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace sqz {

// Seeded random source with a hand-rolled Box-Muller transform so that
// streams are reproducible independently of the standard library's
// distribution implementations.  All randomness in the toolkit flows
// through this class.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        // 53-bit mantissa draw
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (cached second deviate)
    double gaussian() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        cache_ = radius * std::sin(angle);
        has_cache_ = true;
        return radius * std::cos(angle);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(eng_() % span);
    }

private:
    std::mt19937_64 eng_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

}  // namespace sqz
