#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "framelab/measure.hpp"

namespace framelab {

/// sum_j w_j exp(-2 pi i <t, x_j>), compensated, in point order.
std::complex<double> mu_hat(const QuadratureMeasure& m, std::span<const double> t);
std::complex<double> mu_hat(const WindowedMeasure& m, std::span<const double> t);

/// mu_hat at each row of `ts` (row-major, m.dim() columns). Parallel over rows.
std::vector<std::complex<double>> mu_hat_many(const QuadratureMeasure& m, std::span<const double> ts);
std::vector<std::complex<double>> mu_hat_many(const WindowedMeasure& m, std::span<const double> ts);

using Window = std::function<std::complex<double>(std::span<const double> x)>;

/// phi * mu as a complex-weighted cloud. Rejects windows with sum_j w_j |phi(x_j)|^2 == 0.
WindowedMeasure window_measure(const QuadratureMeasure& m, const Window& phi);

/// Same measure without the points whose complex weight is exactly zero.
WindowedMeasure drop_null_points(const WindowedMeasure& nu);

/// Smooth bump exp(1 - 1/(1 - s^2)), s = |x - center| / radius, zero for s >= 1.
Window cap_bump_window(std::vector<double> center, double radius);

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d);

struct ProfileMeta {
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  std::size_t n_dirs = 0;
  double window_factor = 0.0;
  double alpha = 0.0;
  std::string rng_algorithm;
};

struct RadialProfile {
  enum class Kind { wiener_average, decay_envelope };

  std::vector<double> radii;
  std::vector<double> values;
  Kind kind = Kind::wiener_average;
  ProfileMeta meta;

  /// Throws InvalidArgument unless radii are positive and strictly increasing,
  /// lengths match, and envelope values are nonnegative.
  void validate() const;
};

std::string to_string(RadialProfile::Kind kind);
RadialProfile::Kind parse_profile_kind(const std::string& s);

/// r^(alpha-d) * vol(B(0,r)) * mean |mu_hat|^2 over n_samples uniform points of B(0,r).
/// The samples are the same unit-ball draws scaled by r for every r at a fixed seed.
double wiener_average(const QuadratureMeasure& m, double alpha, double r, std::size_t n_samples,
                      std::uint64_t seed);

RadialProfile wiener_profile(const QuadratureMeasure& m, double alpha, std::span<const double> radii,
                             std::size_t n_samples, std::uint64_t seed);

/// For each r, the max of |nu_hat(s theta)| over directions theta and s on a
/// uniform grid of [r, window_factor * r]. Directions are the coordinate axes
/// first, then seeded uniform directions, n_dirs in total.
RadialProfile decay_envelope(const WindowedMeasure& nu, std::span<const double> radii,
                             std::size_t n_dirs, double window_factor, std::uint64_t seed);

}  // namespace framelab
