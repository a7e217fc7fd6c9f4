#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bws/types.hpp"

namespace bws {

// Seeded standard-normal source. Box-Muller on mt19937_64 rather than
// std::normal_distribution, whose draw sequence is implementation-defined;
// this keeps seeded results identical across standard libraries.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // One standard-normal vector, entries drawn in index order.
  Vector next_vector(Eigen::Index n) {
    Vector z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = next();
    return z;
  }

 private:
  double uniform() {
    // 53-bit mantissa in [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace bws
