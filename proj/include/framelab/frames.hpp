#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "framelab/frequency_set.hpp"
#include "framelab/measure.hpp"

namespace framelab {

enum class FrameMethod { dense_svd, iterative_extremal };

std::string to_string(FrameMethod m);
FrameMethod parse_frame_method(const std::string& s);

/// Extreme squared singular values of the weighted analysis matrix
/// C[l, j] = sqrt(w_j) exp(-2 pi i <lambda_l, x_j>).
///
/// Point-indexed vectors g_j = sqrt(w_j) f(x_j) turn the weighted inner
/// product of L2(mu) into the Euclidean one, so sum_l |<f, e_l>|^2 = |C g|^2
/// and |f|^2 = |g|^2. lower_A is taken over the min(|Lambda|, n_points)
/// singular values, i.e. on the span the frequencies can reach.
struct FrameBounds {
  double lower_A = 0.0;
  double upper_B = 0.0;
  std::size_t n_points = 0;
  std::size_t n_freqs = 0;
  FrameMethod method = FrameMethod::dense_svd;
  /// Largest |H v - theta v| / B over the returned Ritz pairs (iterative), 0 for dense.
  double residual = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
  /// sigma_min^2 < 1e-12 sigma_max^2; lower_A is then reported as 0.
  bool rank_deficient = false;
  bool aliasing_warning = false;
  std::string aliasing_detail;
  /// Dimension of the test space when a finite section was requested, else 0.
  std::size_t section_dim = 0;
};

struct FrameOptions {
  FrameMethod method = FrameMethod::dense_svd;
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  /// Largest Gram dimension for which shifted inverse iteration is attempted.
  std::size_t max_inverse_dim = 4096;
  /// Restrict f to the span of {e_gamma : gamma in section} (dense only).
  std::optional<FrequencySet> section;
};

/// Weighted analysis matrix for a row-major list of frequencies.
Eigen::MatrixXcd analysis_matrix(const QuadratureMeasure& m, std::span<const double> freqs);

struct AliasingReport {
  bool warning = false;
  std::string detail;
};

/// Per axis, h = smallest gap between distinct point coordinates; warns when
/// the frequency extent along that axis reaches 1/h, where grid exponentials
/// stop being distinguishable. Axes on which all points agree are skipped.
AliasingReport aliasing_guard(const QuadratureMeasure& m, std::span<const double> freqs);

FrameBounds frame_bounds(const QuadratureMeasure& m, const FrequencySet& lam,
                         const FrameOptions& opts = {});
/// Multiset variant: rows of `freqs` may repeat.
FrameBounds frame_bounds(const QuadratureMeasure& m, std::span<const double> freqs,
                         const FrameOptions& opts = {});

/// upper_B alone; the iterative path skips the smallest eigenvalue.
double bessel_constant(const QuadratureMeasure& m, const FrequencySet& lam,
                       const FrameOptions& opts = {});

struct BesselSup {
  double sup_value = 0.0;
  std::size_t argmax_index = 0;
  std::vector<double> argmax_t;
};

/// max over rows t of `t_grid` of sum_l |mu_hat(t - lambda_l)|^2.
BesselSup bessel_sup_check(const QuadratureMeasure& m, const FrequencySet& lam,
                           std::span<const double> t_grid);

}  // namespace framelab
