#ifndef APWF_RNG_HPP_
#define APWF_RNG_HPP_

#include <cstdint>
#include <random>

#include "apwf/linalg.hpp"

namespace apwf {

// Deterministic RNG for randomized suites. Draws are generated from raw
// mt19937_64 output so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53 random mantissa bits in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double az = uniform(0.0, 6.283185307179586);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(az), s * std::sin(az), z};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace apwf

#endif  // APWF_RNG_HPP_
