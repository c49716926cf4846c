#ifndef DRIFG_RNG_HPP
#define DRIFG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace drifg {

// Thin wrapper around mt19937_64 with hand-rolled transforms so streams are
// bit-reproducible regardless of standard library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform phase in (-pi, pi].
    double uniform_phase() {
        return std::numbers::pi - 2.0 * std::numbers::pi * uniform01();
    }

    /// Rayleigh with scale sigma.
    double rayleigh(double sigma) {
        return sigma * std::sqrt(-2.0 * std::log(1.0 - uniform01()));
    }

    /// Standard normal (Box-Muller).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01(); // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace drifg

#endif
