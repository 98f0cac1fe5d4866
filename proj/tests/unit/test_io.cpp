#include <sstream>
#include <vector>

#include <doctest.h>

#include "framelab/construct.hpp"
#include "framelab/error.hpp"
#include "framelab/io.hpp"

using namespace framelab;

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("measure CSV round trip") {
  auto m = make_sphere_measure(3, 50, 0);
  std::stringstream ss;
  write_measure_csv(ss, m, "abc");
  CHECK(ss.str().starts_with("# config_hash=abc\ndim=3\n"));
  auto back = read_measure_csv(ss);
  REQUIRE(back.size() == m.size());
  for (std::size_t i = 0; i < m.coords().size(); ++i) CHECK(back.coords()[i] == m.coords()[i]);
  for (std::size_t j = 0; j < m.size(); ++j) CHECK(back.weight(j) == m.weight(j));

  auto w = window_measure(m, [](std::span<const double> x) { return std::complex<double>(x[0], x[2]); });
  std::stringstream ws;
  write_windowed_csv(ws, w);
  auto wb = read_windowed_csv(ws);
  REQUIRE(wb.size() == w.size());
  for (std::size_t j = 0; j < w.size(); ++j) CHECK(wb.cweight(j) == w.cweight(j));

  std::stringstream bad("dim=2\n0.5,0,1,9\n");
  CHECK_THROWS_AS(read_measure_csv(bad), FormatError);
  std::stringstream nohead("0.5,1\n");
  CHECK_THROWS_AS(read_measure_csv(nohead), FormatError);
}

TEST_CASE("frequency CSV round trip is exact for rational lattices") {
  auto lam = lattice_frame(Rational(1, 3), 2, 3, 2);
  std::stringstream ss;
  write_frequency_csv(ss, lam);
  CHECK(ss.str().starts_with("dim=3;generator=lattice(1/3,2,3,2)\n"));
  auto back = read_frequency_csv(ss);
  CHECK(back.is_exact());
  CHECK(back.same_rows(lam));
  CHECK(back.generator() == lam.generator());
  for (std::size_t i = 0; i < lam.size(); ++i)
    for (std::size_t a = 0; a < 3; ++a) CHECK(back.exact_freq(i)[a] == lam.exact_freq(i)[a]);

  FrequencySet inexact(2, std::vector<double>{0.1, 0.7, 1e-9, 3.25});
  std::stringstream is;
  write_frequency_csv(is, inexact, "h");
  auto ib = read_frequency_csv(is);
  CHECK(ib.same_rows(inexact));
}

TEST_CASE("profile CSV round trip") {
  RadialProfile p;
  p.radii = {1, 2, 4};
  p.values = {0.5, 0.25, 0.125};
  p.kind = RadialProfile::Kind::decay_envelope;
  p.meta.seed = 77;
  p.meta.n_dirs = 5;
  std::stringstream ss;
  write_profile_csv(ss, p, "x");
  auto back = read_profile_csv(ss);
  CHECK(back.radii == p.radii);
  CHECK(back.values == p.values);
  CHECK(back.kind == p.kind);
  CHECK(back.meta.seed == 77);
  CHECK(back.meta.n_dirs == 5);
}

TEST_CASE("json exports carry the documented fields") {
  FrameBounds fb;
  fb.lower_A = 1.0;
  fb.upper_B = 2.0;
  auto j = to_json(fb);
  for (const char* k : {"A", "B", "method", "n_points", "n_freqs", "residual", "aliasing_warning"})
    CHECK(j.contains(k));

  GapWitness w;
  w.t0 = {1, 2};
  w.defect = 0.5;
  auto jw = to_json(w);
  for (const char* k : {"R", "gamma", "T", "t0", "defect", "samples_used", "seed"}) CHECK(jw.contains(k));

  CountingProfile cp;
  auto jc = to_json(cp);
  for (const char* k : {"radii", "counts", "fitted_alpha"}) CHECK(jc.contains(k));
}
