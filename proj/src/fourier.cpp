#include "framelab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "framelab/error.hpp"
#include "framelab/parallel.hpp"
#include "framelab/random.hpp"
#include "framelab/summation.hpp"

namespace framelab {
namespace {

template <class Measure, class WeightAt>
std::complex<double> transform(const Measure& m, std::span<const double> t, WeightAt weight_at) {
  if (t.size() != m.dim())
    throw DimensionMismatch("mu_hat: t has " + std::to_string(t.size()) + " coordinates, measure has dim " +
                            std::to_string(m.dim()));
  const std::size_t d = m.dim();
  const double* x = m.coords().data();
  ComplexCompensatedSum acc;
  for (std::size_t j = 0; j < m.size(); ++j, x += d) {
    double p = 0.0;
    for (std::size_t a = 0; a < d; ++a) p += t[a] * x[a];
    p -= std::nearbyint(p);
    const double angle = -2.0 * std::numbers::pi * p;
    acc.add(weight_at(j) * std::complex<double>(std::cos(angle), std::sin(angle)));
  }
  return acc.value();
}

template <class Measure>
std::vector<std::complex<double>> transform_many(const Measure& m, std::span<const double> ts) {
  const std::size_t d = m.dim();
  if (ts.size() % d != 0) throw DimensionMismatch("mu_hat_many: rows do not match measure dimension");
  std::vector<std::complex<double>> out(ts.size() / d);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = mu_hat(m, ts.subspan(i * d, d)); });
  return out;
}

double support_radius(std::span<const double> coords, std::size_t d) {
  double r2 = 0.0;
  for (std::size_t j = 0; j + d <= coords.size(); j += d) {
    double s = 0.0;
    for (std::size_t a = 0; a < d; ++a) s += coords[j + a] * coords[j + a];
    r2 = std::max(r2, s);
  }
  return std::sqrt(r2);
}

void check_radii(std::span<const double> radii) {
  if (radii.empty()) throw InvalidArgument("radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InvalidArgument("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument("radii must be strictly increasing");
  }
}

}  // namespace

std::complex<double> mu_hat(const QuadratureMeasure& m, std::span<const double> t) {
  return transform(m, t, [&](std::size_t j) { return std::complex<double>(m.weight(j), 0.0); });
}

std::complex<double> mu_hat(const WindowedMeasure& m, std::span<const double> t) {
  return transform(m, t, [&](std::size_t j) { return m.cweight(j); });
}

std::vector<std::complex<double>> mu_hat_many(const QuadratureMeasure& m, std::span<const double> ts) {
  return transform_many(m, ts);
}

std::vector<std::complex<double>> mu_hat_many(const WindowedMeasure& m, std::span<const double> ts) {
  return transform_many(m, ts);
}

WindowedMeasure window_measure(const QuadratureMeasure& m, const Window& phi) {
  std::vector<std::complex<double>> cw(m.size());
  CompensatedSum energy;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const std::complex<double> f = phi(m.point(j));
    cw[j] = m.weight(j) * f;
    energy.add(m.weight(j) * std::norm(f));
  }
  if (!(energy.value() > 0.0))
    throw InvalidArgument("window_measure: window vanishes on the support (zero L2(mu) norm)");
  return WindowedMeasure(m.dim(), std::vector<double>(m.coords().begin(), m.coords().end()),
                         std::move(cw), "window(" + m.label() + ")");
}

WindowedMeasure drop_null_points(const WindowedMeasure& nu) {
  std::vector<double> coords;
  std::vector<std::complex<double>> cw;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (nu.cweight(j) == std::complex<double>(0.0, 0.0)) continue;
    auto p = nu.point(j);
    coords.insert(coords.end(), p.begin(), p.end());
    cw.push_back(nu.cweight(j));
  }
  return WindowedMeasure(nu.dim(), std::move(coords), std::move(cw), nu.label());
}

Window cap_bump_window(std::vector<double> center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("cap_bump_window: radius must be > 0");
  return [center = std::move(center), radius](std::span<const double> x) -> std::complex<double> {
    if (x.size() != center.size()) throw DimensionMismatch("cap_bump_window: dimension mismatch");
    double s2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) s2 += (x[a] - center[a]) * (x[a] - center[a]);
    s2 /= radius * radius;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
  };
}

double unit_ball_volume(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

std::string to_string(RadialProfile::Kind kind) {
  return kind == RadialProfile::Kind::wiener_average ? "wiener_average" : "decay_envelope";
}

RadialProfile::Kind parse_profile_kind(const std::string& s) {
  if (s == "wiener_average") return RadialProfile::Kind::wiener_average;
  if (s == "decay_envelope") return RadialProfile::Kind::decay_envelope;
  throw FormatError("unknown profile kind '" + s + "'");
}

void RadialProfile::validate() const {
  check_radii(radii);
  if (values.size() != radii.size()) throw InvalidArgument("profile: values and radii differ in length");
  if (kind == Kind::decay_envelope)
    for (double v : values)
      if (!(v >= 0.0)) throw InvalidArgument("profile: envelope values must be >= 0");
}

double wiener_average(const QuadratureMeasure& m, double alpha, double r, std::size_t n_samples,
                      std::uint64_t seed) {
  const std::size_t d = m.dim();
  if (!(alpha >= 0.0 && alpha <= static_cast<double>(d)))
    throw InvalidArgument("wiener_average: alpha must lie in [0, d]");
  if (!(r > 0.0)) throw InvalidArgument("wiener_average: r must be > 0");
  if (n_samples < 1) throw InvalidArgument("wiener_average: n_samples must be >= 1");

  Rng rng(seed);
  std::vector<double> ts(n_samples * d);
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::span<double> row(ts.data() + i * d, d);
    rng.in_ball(row, 1.0);
    for (double& x : row) x *= r;
  }
  std::vector<double> power(n_samples);
  parallel_for(n_samples, [&](std::size_t i) { power[i] = std::norm(mu_hat(m, std::span<const double>(ts).subspan(i * d, d))); });
  CompensatedSum mean;
  for (double p : power) mean.add(p);
  const double dd = static_cast<double>(d);
  return std::pow(r, alpha - dd) * unit_ball_volume(d) * std::pow(r, dd) *
         (mean.value() / static_cast<double>(n_samples));
}

RadialProfile wiener_profile(const QuadratureMeasure& m, double alpha, std::span<const double> radii,
                             std::size_t n_samples, std::uint64_t seed) {
  check_radii(radii);
  RadialProfile p;
  p.kind = RadialProfile::Kind::wiener_average;
  p.radii.assign(radii.begin(), radii.end());
  for (double r : radii) p.values.push_back(wiener_average(m, alpha, r, n_samples, seed));
  p.meta = {seed, n_samples, 0, 0.0, alpha, std::string(Rng::kAlgorithm)};
  return p;
}

RadialProfile decay_envelope(const WindowedMeasure& nu, std::span<const double> radii,
                             std::size_t n_dirs, double window_factor, std::uint64_t seed) {
  check_radii(radii);
  if (n_dirs < 1) throw InvalidArgument("decay_envelope: n_dirs must be >= 1");
  if (!(window_factor >= 1.0)) throw InvalidArgument("decay_envelope: window_factor must be >= 1");
  const std::size_t d = nu.dim();

  std::vector<double> dirs(n_dirs * d, 0.0);
  Rng rng(seed);
  for (std::size_t k = 0; k < n_dirs; ++k) {
    std::span<double> row(dirs.data() + k * d, d);
    if (k < d)
      row[k] = 1.0;
    else
      rng.unit_vector(row);
  }
  const double step = 1.0 / (16.0 * std::max(1.0, support_radius(nu.coords(), d)));

  RadialProfile p;
  p.kind = RadialProfile::Kind::decay_envelope;
  p.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    const double width = (window_factor - 1.0) * r;
    const auto n_steps = static_cast<std::size_t>(std::ceil(width / step));
    const std::size_t per_dir = n_steps + 1;
    std::vector<double> ts(n_dirs * per_dir * d);
    for (std::size_t k = 0; k < n_dirs; ++k)
      for (std::size_t s = 0; s < per_dir; ++s) {
        const double rad = n_steps == 0 ? r : r + width * static_cast<double>(s) / static_cast<double>(n_steps);
        for (std::size_t a = 0; a < d; ++a) ts[(k * per_dir + s) * d + a] = rad * dirs[k * d + a];
      }
    const auto vals = mu_hat_many(nu, ts);
    double best = 0.0;
    for (const auto& v : vals) best = std::max(best, std::abs(v));
    p.values.push_back(best);
  }
  p.meta = {seed, 0, n_dirs, window_factor, 0.0, std::string(Rng::kAlgorithm)};
  return p;
}

}  // namespace framelab
