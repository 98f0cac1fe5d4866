#include "framelab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "framelab/error.hpp"
#include "framelab/parallel.hpp"
#include "framelab/random.hpp"
#include "framelab/summation.hpp"

namespace framelab {
namespace {

constexpr std::size_t kBruteForceLimit = 2048;

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

/// Uniform grid over a subset of the rows of a frequency set.
class SpatialHash {
 public:
  SpatialHash(const FrequencySet& lam, std::span<const std::size_t> rows, double cell)
      : lam_(lam), cell_(cell) {
    for (std::size_t i : rows) cells_[key(lam.freq(i))].push_back(i);
  }

  /// Calls f(row) for every stored row in the 3^d cells around x.
  template <class F>
  void visit_near(std::span<const double> x, F&& f) const {
    const std::size_t d = x.size();
    const auto base = key(x);
    std::vector<std::int64_t> probe(d);
    std::vector<int> off(d, -1);
    for (;;) {
      for (std::size_t a = 0; a < d; ++a) probe[a] = base[a] + off[a];
      if (auto it = cells_.find(probe); it != cells_.end())
        for (std::size_t i : it->second) f(i);
      std::size_t a = 0;
      while (a < d && ++off[a] > 1) off[a++] = -1;
      if (a == d) break;
    }
  }

  /// False when cell indices would not fit comfortably in 64 bits.
  static bool usable(const FrequencySet& lam, double cell) {
    double m = 0.0;
    for (double x : lam.coords()) m = std::max(m, std::abs(x));
    return cell > 0.0 && m / cell < 1e15 && lam.dim() <= 8;
  }

 private:
  std::vector<std::int64_t> key(std::span<const double> x) const {
    std::vector<std::int64_t> k(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) k[a] = static_cast<std::int64_t>(std::floor(x[a] / cell_));
    return k;
  }

  const FrequencySet& lam_;
  double cell_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, CellHash> cells_;
};

void check_radii(std::span<const double> radii) {
  if (radii.empty()) throw InvalidArgument("radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw InvalidArgument("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument("radii must be strictly increasing");
  }
}

double mean(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

}  // namespace

LogLogFit loglog_fit(std::span<const double> x, std::span<const double> y, double floor_y) {
  if (x.size() != y.size()) throw InvalidArgument("loglog_fit: length mismatch");
  if (x.size() < 2) throw InvalidArgument("loglog_fit: need at least 2 points");
  const std::size_t start = x.size() >= 3 ? x.size() / 3 : 0;
  const std::size_t n = x.size() - start;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[start + i] > 0.0)) throw InvalidArgument("loglog_fit: x must be > 0");
    const double yy = std::max(y[start + i], floor_y);
    if (!(yy > 0.0)) throw InvalidArgument("loglog_fit: y must be > 0");
    lx[i] = std::log(x[start + i]);
    ly[i] = std::log(yy);
  }
  const double mx = mean(lx), my = mean(ly);
  CompensatedSum sxy, sxx;
  for (std::size_t i = 0; i < n; ++i) {
    sxy.add((lx[i] - mx) * (ly[i] - my));
    sxx.add((lx[i] - mx) * (lx[i] - mx));
  }
  if (!(sxx.value() > 0.0)) throw InvalidArgument("loglog_fit: x values in the fit window coincide");
  LogLogFit fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum ss;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss.add(e * e);
  }
  fit.residual = std::sqrt(ss.value() / static_cast<double>(n));
  fit.n_used = n;
  return fit;
}

std::string to_string(CenterStrategy s) {
  return s == CenterStrategy::origin_only ? "origin_only" : "freq_centers";
}

CenterStrategy parse_center_strategy(const std::string& s) {
  if (s == "origin_only") return CenterStrategy::origin_only;
  if (s == "freq_centers") return CenterStrategy::freq_centers;
  throw InvalidArgument("unknown center strategy '" + s + "'");
}

CountingProfile counting_profile(const FrequencySet& lam, std::span<const double> radii,
                                 CenterStrategy centers) {
  check_radii(radii);
  const std::size_t d = lam.dim();
  std::vector<double> center_coords(d, 0.0);
  if (centers == CenterStrategy::freq_centers)
    center_coords.insert(center_coords.end(), lam.coords().begin(), lam.coords().end());
  const std::size_t n_centers = center_coords.size() / d;
  const double r_max = radii.back();

  std::vector<std::size_t> all(lam.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::optional<SpatialHash> grid;
  if (lam.size() > kBruteForceLimit && SpatialHash::usable(lam, r_max)) grid.emplace(lam, all, r_max);

  std::vector<std::vector<std::uint64_t>> per_center(n_centers);
  parallel_for(n_centers, [&](std::size_t c) {
    std::span<const double> x(center_coords.data() + c * d, d);
    std::vector<double> d2s;
    auto consider = [&](std::size_t i) {
      const double s = dist2(lam.freq(i), x);
      if (s < r_max * r_max) d2s.push_back(s);
    };
    if (grid)
      grid->visit_near(x, consider);
    else
      for (std::size_t i = 0; i < lam.size(); ++i) consider(i);
    std::sort(d2s.begin(), d2s.end());
    auto& out = per_center[c];
    for (double r : radii)
      out.push_back(static_cast<std::uint64_t>(std::lower_bound(d2s.begin(), d2s.end(), r * r) - d2s.begin()));
  });

  CountingProfile p;
  p.radii.assign(radii.begin(), radii.end());
  p.counts.assign(radii.size(), 0);
  for (const auto& row : per_center)
    for (std::size_t k = 0; k < radii.size(); ++k) p.counts[k] = std::max(p.counts[k], row[k]);
  p.centers = centers;
  p.n_centers = n_centers;
  if (radii.size() >= 2) {
    std::vector<double> y(p.counts.begin(), p.counts.end());
    const LogLogFit fit = loglog_fit(radii, y, 1.0);
    p.fitted_alpha = fit.slope;
    p.fit_intercept = fit.intercept;
    p.fit_residual = fit.residual;
  }
  return p;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds_empirically:
      return "holds_empirically";
    case Verdict::fails_empirically:
      return "fails_empirically";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

WienerTest wiener_alpha_test(const QuadratureMeasure& m, double alpha, std::span<const double> radii,
                             std::size_t n_samples, std::uint64_t seed) {
  WienerTest out;
  out.profile = wiener_profile(m, alpha, radii, n_samples, seed);
  const auto& v = out.profile.values;
  if (v.size() < 3) return out;
  const std::size_t k = (v.size() + 2) / 3;
  out.first_third_mean = mean(std::span<const double>(v).first(k));
  out.last_third_mean = mean(std::span<const double>(v).last(k));
  out.verdict = (out.last_third_mean >= 0.5 * out.first_third_mean && v.back() > 0.0)
                    ? Verdict::holds_empirically
                    : Verdict::fails_empirically;
  return out;
}

BetaFit decay_beta_fit(const WindowedMeasure& nu, std::span<const double> radii, std::size_t n_dirs,
                       std::uint64_t seed, double window_factor) {
  check_radii(radii);
  if (radii.size() < 4) throw InvalidArgument("decay_beta_fit: need at least 4 radii");
  if (radii.back() < 4.0 * radii.front()) throw InvalidArgument("decay_beta_fit: radii must span 2 octaves");
  BetaFit out;
  out.profile = decay_envelope(nu, radii, n_dirs, window_factor, seed);
  const double tiny = std::numeric_limits<double>::min();
  const LogLogFit fit = loglog_fit(radii, out.profile.values, tiny);
  out.beta_hat = -2.0 * fit.slope;
  out.C_hat = std::exp(fit.intercept);
  out.residual = fit.residual;
  return out;
}

Obstruction obstruction_check(double alpha, double beta, double d) {
  if (!(alpha > 0.0 && beta > 0.0 && alpha <= d && beta <= d))
    throw InvalidArgument("obstruction_check: need 0 < alpha, beta <= d");
  return {beta * d > alpha * (beta + d), beta * d / (beta + d)};
}

GammaWindow admissible_gamma_window(double alpha, double beta, double d) {
  if (!(alpha > 0.0 && beta > 0.0 && d > 0.0)) throw InvalidArgument("gamma window: parameters must be > 0");
  return {alpha / beta, 1.0 - alpha / d};
}

bool verify_separation(const FrequencySet& lam, double R, double T, std::span<const double> t0) {
  if (t0.size() != lam.dim()) throw DimensionMismatch("verify_separation: t0 has the wrong dimension");
  const std::vector<double> origin(t0.size(), 0.0);
  if (!(dist2(t0, origin) < 0.25 * R * R)) return false;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    auto f = lam.freq(i);
    if (dist2(f, origin) <= R * R && dist2(f, t0) < T * T) return false;
  }
  return true;
}

GapSearch find_gap_point(const FrequencySet& lam, double R, double gamma, std::size_t max_samples,
                         std::uint64_t seed) {
  if (!(R > 0.0)) throw InvalidArgument("find_gap_point: R must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("find_gap_point: gamma must lie in (0, 1)");
  const std::size_t d = lam.dim();
  const double T = std::pow(R, gamma);
  const std::vector<double> origin(d, 0.0);

  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < lam.size(); ++i)
    if (dist2(lam.freq(i), origin) <= R * R) near.push_back(i);
  std::optional<SpatialHash> grid;
  if (SpatialHash::usable(lam, T)) grid.emplace(lam, near, T);

  GapSearch out;
  Rng rng(seed);
  std::vector<double> t(d);
  std::size_t rejected = 0;
  for (std::size_t s = 0; s < max_samples; ++s) {
    rng.in_ball(t, 0.5 * R);
    out.samples_used = s + 1;
    bool blocked = !(dist2(t, origin) < 0.25 * R * R);
    auto probe = [&](std::size_t i) {
      if (!blocked && dist2(lam.freq(i), t) < T * T) blocked = true;
    };
    if (!blocked) {
      if (grid)
        grid->visit_near(t, probe);
      else
        for (std::size_t i : near) probe(i);
    }
    if (blocked || !verify_separation(lam, R, T, t)) {
      ++rejected;
      continue;
    }
    GapWitness w;
    w.R = R;
    w.gamma = gamma;
    w.T = T;
    w.t0 = t;
    w.samples_used = s + 1;
    w.seed = seed;
    w.n_near = near.size();
    w.min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i : near) w.min_distance = std::min(w.min_distance, std::sqrt(dist2(lam.freq(i), t)));
    out.witness = std::move(w);
    break;
  }
  out.covered_fraction = static_cast<double>(rejected) / static_cast<double>(std::max<std::size_t>(1, out.samples_used));
  return out;
}

GapWitness frame_defect_witness(const WindowedMeasure& nu, const FrequencySet& lam, const GapWitness& w) {
  if (nu.dim() != lam.dim()) throw DimensionMismatch("frame_defect_witness: dimension mismatch");
  if (!verify_separation(lam, w.R, w.T, w.t0))
    throw InvalidArgument("frame_defect_witness: witness fails the separation check");
  const std::size_t d = lam.dim();
  std::vector<double> terms(lam.size());
  parallel_for(lam.size(), [&](std::size_t i) {
    std::vector<double> s(d);
    auto f = lam.freq(i);
    for (std::size_t a = 0; a < d; ++a) s[a] = w.t0[a] - f[a];
    terms[i] = std::norm(mu_hat(nu, s));
  });
  CompensatedSum acc;
  for (double x : terms) acc.add(x);
  GapWitness out = w;
  out.defect = acc.value();
  return out;
}

}  // namespace framelab
