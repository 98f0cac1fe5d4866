#include "framelab/random.hpp"

#include <cmath>
#include <numbers>

namespace framelab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

void Rng::unit_vector(std::span<double> out) {
  for (;;) {
    double norm2 = 0.0;
    for (double& x : out) {
      x = normal();
      norm2 += x * x;
    }
    if (norm2 > 1e-300) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& x : out) x *= inv;
      return;
    }
  }
}

void Rng::in_ball(std::span<double> out, double radius) {
  unit_vector(out);
  const double scale = radius * std::pow(uniform(), 1.0 / static_cast<double>(out.size()));
  for (double& x : out) x *= scale;
}

}  // namespace framelab
