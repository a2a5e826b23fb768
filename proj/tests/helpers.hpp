#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace testutil {

// Deterministic uniform generator (splitmix64 core) so seeded test points are
// identical across platforms and standard-library implementations.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    double uniform01() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    std::uint64_t state_;
};

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testutil
