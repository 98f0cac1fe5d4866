#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelab/fourier.hpp"
#include "framelab/frequency_set.hpp"
#include "framelab/measure.hpp"

namespace framelab {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square of the log-space residuals.
  double residual = 0.0;
  std::size_t n_used = 0;
};

/// Least squares of log y on log x over the last two thirds of the points
/// (the first floor(n/3) are discarded). y values are clamped below at `floor_y`.
LogLogFit loglog_fit(std::span<const double> x, std::span<const double> y, double floor_y = 0.0);

enum class CenterStrategy { origin_only, freq_centers };

std::string to_string(CenterStrategy s);
CenterStrategy parse_center_strategy(const std::string& s);

struct CountingProfile {
  std::vector<double> radii;
  std::vector<std::uint64_t> counts;
  CenterStrategy centers = CenterStrategy::freq_centers;
  std::size_t n_centers = 0;
  double fitted_alpha = 0.0;
  double fit_intercept = 0.0;
  double fit_residual = 0.0;
};

/// max over centers x of #{lambda : |lambda - x| < r} for each radius, with a
/// log-log fit of max(count, 1) against r.
CountingProfile counting_profile(const FrequencySet& lam, std::span<const double> radii,
                                 CenterStrategy centers);

enum class Verdict { holds_empirically, fails_empirically, inconclusive };

std::string to_string(Verdict v);

struct WienerTest {
  RadialProfile profile;
  Verdict verdict = Verdict::inconclusive;
  double first_third_mean = 0.0;
  double last_third_mean = 0.0;
};

/// Wiener-average profile with a trend verdict: holds when the mean of the
/// last ceil(n/3) values is at least half the mean of the first ceil(n/3) and
/// the final value is positive. Fewer than 3 radii is inconclusive.
WienerTest wiener_alpha_test(const QuadratureMeasure& m, double alpha, std::span<const double> radii,
                             std::size_t n_samples, std::uint64_t seed);

struct BetaFit {
  double beta_hat = 0.0;
  double C_hat = 0.0;
  double residual = 0.0;
  RadialProfile profile;
};

/// Fits log envelope = log C - (beta/2) log r. Needs >= 4 radii with r_max >= 4 r_min.
BetaFit decay_beta_fit(const WindowedMeasure& nu, std::span<const double> radii, std::size_t n_dirs,
                       std::uint64_t seed, double window_factor = 1.25);

struct Obstruction {
  bool blocked = false;
  /// (1/beta + 1/d)^-1
  double landau_floor = 0.0;
};

/// blocked = 1/alpha - 1/beta > 1/d, evaluated as beta*d > alpha*(beta + d).
Obstruction obstruction_check(double alpha, double beta, double d);

struct GammaWindow {
  double lo = 0.0;  ///< alpha / beta
  double hi = 0.0;  ///< 1 - alpha / d
  bool nonempty() const { return lo < hi; }
  bool contains(double g) const { return lo < g && g < hi; }
};

GammaWindow admissible_gamma_window(double alpha, double beta, double d);

struct GapWitness {
  double R = 0.0;
  double gamma = 0.0;
  double T = 0.0;
  std::vector<double> t0;
  std::optional<double> defect;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
  /// |Lambda within distance R of the origin|
  std::size_t n_near = 0;
  /// min over those frequencies of |t0 - lambda| (infinity when there are none)
  double min_distance = 0.0;
};

struct GapSearch {
  std::optional<GapWitness> witness;
  std::size_t samples_used = 0;
  /// Fraction of samples rejected as lying within T of some frequency.
  double covered_fraction = 0.0;
};

/// Rejection sampling of t0 in B(0, R/2) at distance >= T = R^gamma from every
/// frequency with |lambda| <= R. Candidates come from a spatial hash of cell
/// size T and are re-checked exhaustively before being returned.
GapSearch find_gap_point(const FrequencySet& lam, double R, double gamma, std::size_t max_samples,
                         std::uint64_t seed);

/// Exhaustive check of |t0| < R/2 and |t0 - lambda| >= T for all |lambda| <= R.
bool verify_separation(const FrequencySet& lam, double R, double T, std::span<const double> t0);

/// Copy of `w` with defect = sum over all lambda of |nu_hat(t0 - lambda)|^2.
/// Throws InvalidArgument if the separation check fails.
GapWitness frame_defect_witness(const WindowedMeasure& nu, const FrequencySet& lam, const GapWitness& w);

}  // namespace framelab
