#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace framelab {

/// Seeded generator whose output is fully specified across platforms:
/// std::mt19937_64 bits converted to doubles by the library itself (the
/// standard distributions are implementation-defined and are not used).
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53/box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal, Box-Muller with a cached second variate.
  double normal();
  /// Uniform direction on the unit sphere S^{dim-1}, written to `out`.
  void unit_vector(std::span<double> out);
  /// Uniform point in the open ball B(0, radius), written to `out`.
  void in_ball(std::span<double> out, double radius);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace framelab
