#pragma once

#include "telegate/states.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace telegate {

/// Seeded 64-bit Mersenne twister. Uniforms come from the top 53 bits and
/// normals from Box-Muller, so streams are identical on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Haar-random data state: normalized complex Gaussian vector.
inline PureState random_data_state(int dim, Rng &rng) {
    std::vector<cplx> a(static_cast<std::size_t>(dim));
    for (auto &x : a) {
        const double re = rng.normal();
        x = {re, rng.normal()};
    }
    return make_data_state(dim, a, true);
}

} // namespace telegate
