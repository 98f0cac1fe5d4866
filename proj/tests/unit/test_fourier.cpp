#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "framelab/error.hpp"
#include "framelab/fourier.hpp"
#include "framelab/parallel.hpp"
#include "support.hpp"

using namespace framelab;
using std::numbers::pi;

TEST_CASE("mu_hat basics") {
  const double o[2] = {0, 0};
  auto atom = make_atom(o);
  const double t[2] = {3.7, -1.2};
  CHECK(std::abs(mu_hat(atom, t) - std::complex<double>(1.0)) < 1e-15);

  auto seg = make_segment_measure(1, 2048);
  const double h[1] = {0.5};
  const auto expect = std::polar(2.0 / pi, -pi * 0.5);
  CHECK(std::abs(mu_hat(seg, h) - expect) < 1e-5);

  const double z[1] = {0.0};
  CHECK(std::abs(mu_hat(seg, z) - std::complex<double>(seg.total_mass())) < 1e-15);

  const double bad[2] = {1, 2};
  CHECK_THROWS_AS(mu_hat(seg, bad), DimensionMismatch);
}

TEST_CASE("mu_hat agrees with naive sum, is bounded and conjugate symmetric") {
  auto s = make_sphere_measure(3, 2000, 0);
  for (int i = 0; i < 20; ++i) {
    const double t[3] = {0.37 * i, -0.11 * i + 1.0, 0.05 * i * i};
    const double mt[3] = {-t[0], -t[1], -t[2]};
    const auto v = mu_hat(s, t);
    CHECK(std::abs(v - test::naive_hat(s, t)) < 1e-10);
    CHECK(std::abs(v) <= s.total_mass());
    CHECK(std::abs(mu_hat(s, mt) - std::conj(v)) < 1e-12);
  }
}

TEST_CASE("mu_hat_many is thread-count independent") {
  auto s = make_sphere_measure(3, 3000, 0);
  std::vector<double> ts;
  for (int i = 0; i < 64; ++i) ts.insert(ts.end(), {0.3 * i, 0.1 * i, -0.2 * i});
  set_threads(1);
  auto a = mu_hat_many(s, ts);
  set_threads(4);
  auto b = mu_hat_many(s, ts);
  set_threads(1);
  REQUIRE(a.size() == 64);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("window_measure") {
  auto s = make_sphere_measure(3, 4000, 0);
  auto one = window_measure(s, [](auto) { return std::complex<double>(1.0); });
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(one.cweight(j) == std::complex<double>(s.weight(j)));
  CHECK_THROWS_AS(window_measure(s, [](auto) { return std::complex<double>(0.0); }), InvalidArgument);

  auto cap = window_measure(s, cap_bump_window({0, 0, 1}, 0.5));
  std::complex<double> total = 0.0;
  for (auto w : cap.cweights()) total += w;
  CHECK(std::abs(total) > 0.0);
  CHECK(std::abs(total) < 4.0 * pi);
  auto dropped = drop_null_points(cap);
  CHECK(dropped.size() < cap.size());
  const double t[3] = {0.4, 1.3, -2.0};
  CHECK(std::abs(mu_hat(dropped, t) - mu_hat(cap, t)) < 1e-14);
}

TEST_CASE("wiener_average") {
  const double o[2] = {0, 0};
  auto atom = make_atom(o);
  // |mu_hat| = 1: the Monte Carlo mean is exact, so the value is vol(B^2) = pi.
  for (double r : {1.0, 5.0, 40.0}) CHECK(wiener_average(atom, 0.0, r, 64, 1) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0));

  auto seg = make_segment_measure(2, 256);
  const double a = wiener_average(seg, 1.0, 8.0, 2048, 42);
  CHECK(a == wiener_average(seg, 1.0, 8.0, 2048, 42));
  CHECK(a != wiener_average(seg, 1.0, 8.0, 2048, 43));
  CHECK_THROWS_AS(wiener_average(seg, 3.0, 8.0, 10, 1), InvalidArgument);

  const double radii[3] = {4, 8, 16};
  auto p = wiener_profile(seg, 1.0, radii, 512, 3);
  CHECK(p.kind == RadialProfile::Kind::wiener_average);
  CHECK(p.meta.rng_algorithm == "mt19937_64/u53/box-muller");
  CHECK(p.meta.n_samples == 512);
  CHECK(p.values.size() == 3);
}

TEST_CASE("decay_envelope") {
  const double o[3] = {0, 0, 0};
  auto atom = window_measure(make_atom(o), [](auto) { return std::complex<double>(1.0); });
  const double radii[4] = {1, 2, 4, 8};
  auto e = decay_envelope(atom, radii, 5, 1.25, 0);
  for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  auto seg = window_measure(make_segment_measure(2, 256), [](auto) { return std::complex<double>(1.0); });
  auto es = decay_envelope(seg, radii, 2, 1.25, 0);
  for (double v : es.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  // Sphere: sup of |2 sin(2 pi s)/s| over [r, 1.25 r] is 2/r up to the window's first crest.
  auto sph = window_measure(make_sphere_measure(3, 20000, 0), [](auto) { return std::complex<double>(1.0); });
  const double sr[4] = {2, 4, 8, 16};
  auto env = decay_envelope(sph, sr, 3, 1.25, 0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(env.values[i] <= 4.0 * pi);
    CHECK(env.values[i] == doctest::Approx(2.0 / sr[i]).epsilon(0.15));
  }

  RadialProfile bad;
  bad.kind = RadialProfile::Kind::decay_envelope;
  bad.radii = {1, 2};
  bad.values = {1, -1};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad.values = {1, 1};
  bad.radii = {2, 1};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK(parse_profile_kind(to_string(RadialProfile::Kind::decay_envelope)) == RadialProfile::Kind::decay_envelope);
}
