#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace framelab {

/// Weighted point cloud in R^dim standing in for a positive finite measure.
///
/// Coordinates are stored row-major (point j occupies coords[j*dim, (j+1)*dim)).
/// The constructor checks the invariants once: dim >= 1, a nonempty point
/// list, matching lengths, and strictly positive finite weights. Instances
/// are immutable afterwards.
class QuadratureMeasure {
 public:
  QuadratureMeasure(std::size_t dim, std::vector<double> coords, std::vector<double> weights,
                    std::string label = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> point(std::size_t j) const { return {coords_.data() + j * dim_, dim_}; }
  double weight(std::size_t j) const { return weights_[j]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> weights() const { return weights_; }
  const std::string& label() const { return label_; }
  double total_mass() const { return mass_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::string label_;
  double mass_;
};

/// Complex-weighted point cloud representing phi * mu.
class WindowedMeasure {
 public:
  WindowedMeasure(std::size_t dim, std::vector<double> coords,
                  std::vector<std::complex<double>> cweights, std::string label = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return cweights_.size(); }
  std::span<const double> point(std::size_t j) const { return {coords_.data() + j * dim_, dim_}; }
  std::complex<double> cweight(std::size_t j) const { return cweights_[j]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const std::complex<double>> cweights() const { return cweights_; }
  const std::string& label() const { return label_; }
  /// Sum of |cweights|.
  double total_variation() const { return variation_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<std::complex<double>> cweights_;
  std::string label_;
  double variation_;
};

/// Sample points of a parameter domain E in R^k with their cell volumes.
struct SampleGrid {
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<double> cell_volumes;

  std::size_t size() const { return cell_volumes.size(); }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

/// Tensor midpoint grid on the box prod [lower_i, upper_i], n_per_axis cells per axis.
SampleGrid midpoint_grid(std::span<const double> lower, std::span<const double> upper,
                         std::size_t n_per_axis);

/// phi : R^k -> R^{d-k}; writes d-k values into `out`.
using GraphMap = std::function<void(std::span<const double> x, std::span<double> out)>;
/// Density w : E -> (0, inf).
using GraphWeight = std::function<double(std::span<const double> x)>;

/// Midpoint rule on [0,1] along the first axis of R^d; mass 1.
QuadratureMeasure make_segment_measure(std::size_t d, std::size_t n_points);

/// Midpoint grid on [0,1]^k placed at axes [axis_offset, axis_offset + k) of R^d; mass 1.
QuadratureMeasure make_cube_measure(std::size_t k, std::size_t d, std::size_t axis_offset,
                                    std::size_t n_per_axis);

/// Points (x_i, phi(x_i)) with weights w(x_i) * cellvol_i.
QuadratureMeasure make_graph_measure(std::size_t k, std::size_t d, const SampleGrid& grid,
                                     const GraphMap& phi, const GraphWeight& w);

/// Equal-weight points on the unit sphere S^{d-1} with total mass equal to its area.
/// d == 3 uses a golden-angle spiral (z at midpoints), d == 2 equally spaced
/// midpoint angles; both ignore `seed`. d >= 4 samples uniformly with `seed`.
QuadratureMeasure make_sphere_measure(std::size_t d, std::size_t n_points, std::uint64_t seed);

/// Level-`depth` atomic approximation of the self-similar measure of the IFS
/// {ratio*x, ratio*x + (1 - ratio)}: 2^depth atoms at interval left endpoints.
QuadratureMeasure make_cantor_measure(double ratio, unsigned depth);

/// Single atom of the given mass at `at`.
QuadratureMeasure make_atom(std::span<const double> at, double mass = 1.0);

/// rho = mu x delta_0 + delta_0 x nu on R^{n+m}.
QuadratureMeasure mix_sum(const QuadratureMeasure& mu, const QuadratureMeasure& nu);

/// rho x sigma on R^{p+l}.
QuadratureMeasure product_measure(const QuadratureMeasure& rho, const QuadratureMeasure& sigma);

/// mu + nu for two measures on the same space.
QuadratureMeasure superpose(const QuadratureMeasure& mu, const QuadratureMeasure& nu);

/// Same points, all weights multiplied by c > 0.
QuadratureMeasure scale_weights(const QuadratureMeasure& mu, double c);

/// Surface area of the unit sphere S^{d-1} in R^d.
double sphere_area(std::size_t d);

}  // namespace framelab
