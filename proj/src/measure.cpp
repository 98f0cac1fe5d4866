#include "framelab/measure.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "framelab/error.hpp"
#include "framelab/random.hpp"
#include "framelab/summation.hpp"

namespace framelab {
namespace {

constexpr unsigned kMaxCantorDepth = 24;

void check_cloud(std::size_t dim, std::size_t n_coords, std::size_t n_weights) {
  if (dim < 1) throw InvalidArgument("measure dimension must be >= 1");
  if (n_weights == 0) throw InvalidArgument("measure must have at least one point");
  if (n_coords != dim * n_weights)
    throw InvalidArgument("coordinate count " + std::to_string(n_coords) + " does not match " +
                          std::to_string(n_weights) + " points in dimension " +
                          std::to_string(dim));
}

}  // namespace

QuadratureMeasure::QuadratureMeasure(std::size_t dim, std::vector<double> coords,
                                     std::vector<double> weights, std::string label)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)), label_(std::move(label)) {
  check_cloud(dim_, coords_.size(), weights_.size());
  CompensatedSum mass;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidArgument("quadrature weights must be finite and strictly positive");
    mass.add(w);
  }
  for (double x : coords_)
    if (!std::isfinite(x)) throw InvalidArgument("non-finite coordinate in measure");
  mass_ = mass.value();
  if (!std::isfinite(mass_)) throw InvalidArgument("total mass is not finite");
}

WindowedMeasure::WindowedMeasure(std::size_t dim, std::vector<double> coords,
                                 std::vector<std::complex<double>> cweights, std::string label)
    : dim_(dim), coords_(std::move(coords)), cweights_(std::move(cweights)), label_(std::move(label)) {
  check_cloud(dim_, coords_.size(), cweights_.size());
  CompensatedSum variation;
  for (auto w : cweights_) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw InvalidArgument("non-finite windowed weight");
    variation.add(std::abs(w));
  }
  variation_ = variation.value();
  if (!(variation_ > 0.0)) throw InvalidArgument("window vanishes on every point of the support");
}

SampleGrid midpoint_grid(std::span<const double> lower, std::span<const double> upper,
                         std::size_t n_per_axis) {
  if (lower.size() != upper.size() || lower.empty())
    throw InvalidArgument("midpoint_grid: box bounds must have equal nonzero length");
  if (n_per_axis < 1) throw InvalidArgument("midpoint_grid: n_per_axis must be >= 1");
  const std::size_t k = lower.size();
  double cell = 1.0;
  std::vector<double> step(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (!(upper[a] > lower[a])) throw InvalidArgument("midpoint_grid: empty box");
    step[a] = (upper[a] - lower[a]) / static_cast<double>(n_per_axis);
    cell *= step[a];
  }
  std::size_t total = 1;
  for (std::size_t a = 0; a < k; ++a) total *= n_per_axis;

  SampleGrid grid;
  grid.dim = k;
  grid.coords.reserve(total * k);
  grid.cell_volumes.assign(total, cell);
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t a = 0; a < k; ++a)
      grid.coords.push_back(lower[a] + (static_cast<double>(idx[a]) + 0.5) * step[a]);
    for (std::size_t a = k; a-- > 0;) {
      if (++idx[a] < n_per_axis) break;
      idx[a] = 0;
    }
  }
  return grid;
}

QuadratureMeasure make_segment_measure(std::size_t d, std::size_t n_points) {
  if (d < 1) throw InvalidArgument("segment: ambient dimension must be >= 1");
  if (n_points < 1) throw InvalidArgument("segment: n_points must be >= 1");
  std::vector<double> coords(d * n_points, 0.0);
  const double n = static_cast<double>(n_points);
  for (std::size_t j = 0; j < n_points; ++j) coords[j * d] = (static_cast<double>(j) + 0.5) / n;
  return QuadratureMeasure(d, std::move(coords), std::vector<double>(n_points, 1.0 / n),
                           "segment(d=" + std::to_string(d) + ",n=" + std::to_string(n_points) + ")");
}

QuadratureMeasure make_cube_measure(std::size_t k, std::size_t d, std::size_t axis_offset,
                                    std::size_t n_per_axis) {
  if (k < 1 || k > d) throw InvalidArgument("cube: need 1 <= k <= d");
  if (axis_offset > d - k) throw InvalidArgument("cube: need 0 <= axis_offset <= d - k");
  if (n_per_axis < 1) throw InvalidArgument("cube: n_per_axis must be >= 1");
  const std::vector<double> lo(k, 0.0), hi(k, 1.0);
  const SampleGrid grid = midpoint_grid(lo, hi, n_per_axis);
  std::vector<double> coords(d * grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto p = grid.point(i);
    for (std::size_t a = 0; a < k; ++a) coords[i * d + axis_offset + a] = p[a];
  }
  return QuadratureMeasure(d, std::move(coords), grid.cell_volumes,
                           "cube(k=" + std::to_string(k) + ",d=" + std::to_string(d) +
                               ",offset=" + std::to_string(axis_offset) +
                               ",n=" + std::to_string(n_per_axis) + ")");
}

QuadratureMeasure make_graph_measure(std::size_t k, std::size_t d, const SampleGrid& grid,
                                     const GraphMap& phi, const GraphWeight& w) {
  if (k < 1 || k > d) throw InvalidArgument("graph: need 1 <= k <= d");
  if (grid.dim != k) throw DimensionMismatch("graph: sample grid dimension differs from k");
  if (grid.size() == 0 || grid.coords.size() != grid.size() * k)
    throw InvalidArgument("graph: malformed sample grid");
  std::vector<double> coords(d * grid.size(), 0.0);
  std::vector<double> weights(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto x = grid.point(i);
    if (!(grid.cell_volumes[i] > 0.0)) throw InvalidArgument("graph: cell volumes must be > 0");
    const double wi = w(x);
    if (!(wi > 0.0)) throw InvalidArgument("graph: weight function must be strictly positive on E");
    std::span<double> row(coords.data() + i * d, d);
    std::copy(x.begin(), x.end(), row.begin());
    if (d > k) phi(x, row.subspan(k));
    weights[i] = wi * grid.cell_volumes[i];
  }
  return QuadratureMeasure(d, std::move(coords), std::move(weights),
                           "graph(k=" + std::to_string(k) + ",d=" + std::to_string(d) +
                               ",n=" + std::to_string(grid.size()) + ")");
}

double sphere_area(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

QuadratureMeasure make_sphere_measure(std::size_t d, std::size_t n_points, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("sphere: ambient dimension must be >= 2");
  if (n_points < 1) throw InvalidArgument("sphere: n_points must be >= 1");
  const double n = static_cast<double>(n_points);
  std::vector<double> coords(d * n_points);
  if (d == 2) {
    for (std::size_t j = 0; j < n_points; ++j) {
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / n;
      coords[2 * j] = std::cos(theta);
      coords[2 * j + 1] = std::sin(theta);
    }
  } else if (d == 3) {
    // golden-angle spiral; z runs over the midpoints of n equal-area bands
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t j = 0; j < n_points; ++j) {
      const double z = 1.0 - 2.0 * (static_cast<double>(j) + 0.5) / n;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = std::fmod(golden_angle * static_cast<double>(j), 2.0 * std::numbers::pi);
      coords[3 * j] = rho * std::cos(phi);
      coords[3 * j + 1] = rho * std::sin(phi);
      coords[3 * j + 2] = z;
    }
  } else {
    Rng rng(seed);
    for (std::size_t j = 0; j < n_points; ++j)
      rng.unit_vector(std::span<double>(coords.data() + j * d, d));
  }
  return QuadratureMeasure(d, std::move(coords), std::vector<double>(n_points, sphere_area(d) / n),
                           "sphere(d=" + std::to_string(d) + ",n=" + std::to_string(n_points) + ")");
}

QuadratureMeasure make_cantor_measure(double ratio, unsigned depth) {
  if (!(ratio > 0.0 && ratio <= 0.5)) throw InvalidArgument("cantor: ratio must lie in (0, 1/2]");
  if (depth > kMaxCantorDepth)
    throw InvalidArgument("cantor: depth above " + std::to_string(kMaxCantorDepth));
  std::vector<double> atoms{0.0};
  for (unsigned level = 0; level < depth; ++level) {
    std::vector<double> next;
    next.reserve(2 * atoms.size());
    for (double x : atoms) next.push_back(ratio * x);
    for (double x : atoms) next.push_back(ratio * x + (1.0 - ratio));
    atoms = std::move(next);
  }
  const double w = std::ldexp(1.0, -static_cast<int>(depth));
  const std::size_t n = atoms.size();
  return QuadratureMeasure(1, std::move(atoms), std::vector<double>(n, w),
                           "cantor(ratio=" + std::to_string(ratio) + ",depth=" + std::to_string(depth) +
                               ")");
}

QuadratureMeasure make_atom(std::span<const double> at, double mass) {
  return QuadratureMeasure(at.size(), std::vector<double>(at.begin(), at.end()), {mass}, "atom");
}

QuadratureMeasure mix_sum(const QuadratureMeasure& mu, const QuadratureMeasure& nu) {
  const std::size_t n = mu.dim(), m = nu.dim(), d = n + m;
  std::vector<double> coords((mu.size() + nu.size()) * d, 0.0);
  std::vector<double> weights;
  weights.reserve(mu.size() + nu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    auto p = mu.point(j);
    std::copy(p.begin(), p.end(), coords.begin() + static_cast<std::ptrdiff_t>(j * d));
    weights.push_back(mu.weight(j));
  }
  const std::size_t base = mu.size();
  for (std::size_t j = 0; j < nu.size(); ++j) {
    auto p = nu.point(j);
    std::copy(p.begin(), p.end(), coords.begin() + static_cast<std::ptrdiff_t>((base + j) * d + n));
    weights.push_back(nu.weight(j));
  }
  return QuadratureMeasure(d, std::move(coords), std::move(weights),
                           "mix(" + mu.label() + "," + nu.label() + ")");
}

QuadratureMeasure product_measure(const QuadratureMeasure& rho, const QuadratureMeasure& sigma) {
  const std::size_t p = rho.dim(), l = sigma.dim(), d = p + l;
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(rho.size() * sigma.size() * d);
  weights.reserve(rho.size() * sigma.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      auto x = rho.point(i);
      auto y = sigma.point(j);
      coords.insert(coords.end(), x.begin(), x.end());
      coords.insert(coords.end(), y.begin(), y.end());
      weights.push_back(rho.weight(i) * sigma.weight(j));
    }
  }
  return QuadratureMeasure(d, std::move(coords), std::move(weights),
                           "product(" + rho.label() + "," + sigma.label() + ")");
}

QuadratureMeasure superpose(const QuadratureMeasure& mu, const QuadratureMeasure& nu) {
  if (mu.dim() != nu.dim()) throw DimensionMismatch("superpose: measures live in different dimensions");
  std::vector<double> coords(mu.coords().begin(), mu.coords().end());
  coords.insert(coords.end(), nu.coords().begin(), nu.coords().end());
  std::vector<double> weights(mu.weights().begin(), mu.weights().end());
  weights.insert(weights.end(), nu.weights().begin(), nu.weights().end());
  return QuadratureMeasure(mu.dim(), std::move(coords), std::move(weights),
                           "sum(" + mu.label() + "," + nu.label() + ")");
}

QuadratureMeasure scale_weights(const QuadratureMeasure& mu, double c) {
  if (!(c > 0.0)) throw InvalidArgument("scale_weights: factor must be > 0");
  std::vector<double> weights(mu.weights().begin(), mu.weights().end());
  for (double& w : weights) w *= c;
  return QuadratureMeasure(mu.dim(), std::vector<double>(mu.coords().begin(), mu.coords().end()),
                           std::move(weights), mu.label());
}

}  // namespace framelab
