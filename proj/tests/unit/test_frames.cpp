#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "framelab/construct.hpp"
#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "support.hpp"

using namespace framelab;

namespace {

FrameOptions iterative() {
  FrameOptions o;
  o.method = FrameMethod::iterative_extremal;
  return o;
}

QuadratureMeasure shuffled(const QuadratureMeasure& m, unsigned seed) {
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937(seed));
  std::vector<double> c, w;
  for (auto j : order) {
    c.insert(c.end(), m.point(j).begin(), m.point(j).end());
    w.push_back(m.weight(j));
  }
  return QuadratureMeasure(m.dim(), c, w);
}

QuadratureMeasure jittered_cloud(std::size_t d, std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(n * d), w(n);
  for (auto& x : c) x = u(g);
  for (auto& x : w) x = 0.5 + u(g);
  return QuadratureMeasure(d, c, w);
}

}  // namespace

TEST_CASE("trivial frame bounds") {
  const double o[1] = {0.0};
  auto atom = make_atom(o);
  FrequencySet single(1, std::vector<double>{2.75});
  auto fb = frame_bounds(atom, single);
  CHECK(fb.lower_A == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fb.upper_B == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<double> c, w(8, 0.125);
  for (int j = 0; j < 8; ++j) c.push_back(j / 8.0);
  QuadratureMeasure grid(1, c, w);
  FrequencySet dft(1, std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7});
  for (auto method : {FrameMethod::dense_svd, FrameMethod::iterative_extremal}) {
    FrameOptions opt;
    opt.method = method;
    auto b = frame_bounds(grid, dft, opt);
    CHECK(b.lower_A == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b.upper_B == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b.n_freqs == 8);
    CHECK(b.n_points == 8);
  }
  CHECK(bessel_constant(grid, dft) == doctest::Approx(1.0).epsilon(1e-12));

  FrequencySet k5(1, std::vector<double>{0, 1.5, 3, 4, 9});
  CHECK(bessel_constant(atom, k5) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("segment with integer frequencies") {
  auto seg = make_segment_measure(1, 512);
  auto lam = test::int_box(1, 16);
  auto fb = frame_bounds(seg, lam);
  CHECK(fb.lower_A >= 0.95);
  CHECK(fb.lower_A <= 1.0 + 1e-12);
  CHECK(fb.upper_B >= 1.0 - 1e-12);
  CHECK(fb.upper_B <= 1.000001);
  CHECK_FALSE(fb.aliasing_warning);
  CHECK(fb.method == FrameMethod::dense_svd);
  CHECK(fb.residual == 0.0);

  // Gram eigenvalue oracle
  auto g = test::gram_bounds(seg, lam.coords());
  CHECK(fb.lower_A == doctest::Approx(g.lo).epsilon(1e-12));
  CHECK(fb.upper_B == doctest::Approx(g.hi).epsilon(1e-12));

  std::vector<double> t;
  for (int i = 0; i < 40; ++i) t.push_back(i / 40.0);
  auto sup = bessel_sup_check(seg, lam, t);
  CHECK(sup.sup_value <= 1.0 + 1e-6);
  CHECK(sup.argmax_t.size() == 1);
}

TEST_CASE("dense and iterative agree against the Gram oracle") {
  for (unsigned seed : {1u, 2u, 3u}) {
    auto m = jittered_cloud(2, 60, seed);
    auto lam = test::int_box(2, 2);  // 25 rows < 60 points
    auto d = frame_bounds(m, lam);
    auto it = frame_bounds(m, lam, iterative());
    auto g = test::gram_bounds(m, lam.coords());
    CHECK(d.lower_A == doctest::Approx(g.lo).epsilon(1e-10));
    CHECK(d.upper_B == doctest::Approx(g.hi).epsilon(1e-10));
    CHECK(it.converged);
    CHECK(it.residual <= 1e-8);
    CHECK(std::abs(it.lower_A - d.lower_A) <= 1e-8 * d.upper_B);
    CHECK(std::abs(it.upper_B - d.upper_B) <= 1e-8 * d.upper_B);

    // wide case: more frequencies than points
    auto lam2 = test::int_box(2, 5);  // 121 rows > 60 points
    auto d2 = frame_bounds(m, lam2);
    auto it2 = frame_bounds(m, lam2, iterative());
    auto g2 = test::gram_bounds(m, lam2.coords());
    CHECK(d2.lower_A == doctest::Approx(g2.lo).epsilon(1e-9));
    CHECK(d2.upper_B == doctest::Approx(g2.hi).epsilon(1e-10));
    CHECK(std::abs(it2.lower_A - d2.lower_A) <= 1e-8 * d2.upper_B);
    CHECK(std::abs(it2.upper_B - d2.upper_B) <= 1e-8 * d2.upper_B);
  }
}

TEST_CASE("permutation and scaling invariance") {
  auto m = jittered_cloud(2, 40, 9);
  auto lam = test::int_box(2, 3);
  auto base = frame_bounds(m, lam);

  std::vector<std::size_t> order(lam.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937(5));
  auto p1 = frame_bounds(m, lam.permuted(order));
  auto p2 = frame_bounds(shuffled(m, 11), lam);
  CHECK(std::abs(p1.lower_A - base.lower_A) <= 1e-12 * base.upper_B);
  CHECK(std::abs(p1.upper_B - base.upper_B) <= 1e-12 * base.upper_B);
  CHECK(std::abs(p2.lower_A - base.lower_A) <= 1e-12 * base.upper_B);
  CHECK(std::abs(p2.upper_B - base.upper_B) <= 1e-12 * base.upper_B);

  for (double c : {0.25, 3.0}) {
    auto s = frame_bounds(scale_weights(m, c), lam);
    CHECK(std::abs(s.lower_A - c * base.lower_A) <= 1e-12 * c * base.upper_B);
    CHECK(std::abs(s.upper_B - c * base.upper_B) <= 1e-12 * c * base.upper_B);
  }
}

TEST_CASE("monotonicity and duplicates when frequencies outnumber points") {
  auto m = jittered_cloud(1, 12, 4);
  std::vector<double> f;
  for (int k = -10; k <= 10; ++k) f.push_back(k);  // 21 >= 12
  auto small = frame_bounds(m, std::span<const double>(f));
  auto f2 = f;
  f2.push_back(0.37);
  auto bigger = frame_bounds(m, std::span<const double>(f2));
  CHECK(bigger.lower_A >= small.lower_A - 1e-12);
  CHECK(bigger.upper_B >= small.upper_B - 1e-12);

  auto dup = f;
  dup.push_back(3.0);
  auto d = frame_bounds(m, std::span<const double>(dup));
  CHECK(d.lower_A >= small.lower_A - 1e-12);
  CHECK(d.upper_B <= 2.0 * small.upper_B + 1e-12);
  CHECK_THROWS_AS(FrequencySet(1, dup), InvalidArgument);
}

TEST_CASE("rank deficiency and aliasing") {
  // Frequencies 0 and 8 coincide on the 8-point grid.
  auto seg = make_segment_measure(1, 8);
  FrequencySet alias(1, std::vector<double>{0, 8});
  auto fb = frame_bounds(seg, alias);
  CHECK(fb.rank_deficient);
  CHECK(fb.lower_A == 0.0);
  CHECK(fb.upper_B == doctest::Approx(2.0));
  CHECK(fb.aliasing_warning);
  CHECK_FALSE(fb.aliasing_detail.empty());

  CHECK_FALSE(aliasing_guard(make_segment_measure(2, 512), test::int_box(2, 16).coords()).warning);

  FrequencySet wrong_dim(2, std::vector<double>{0, 0});
  CHECK_THROWS_AS(frame_bounds(seg, wrong_dim), DimensionMismatch);
  CHECK_THROWS_AS(frame_bounds(seg, FrequencySet(1)), InvalidArgument);
  CHECK(parse_frame_method("iterative_extremal") == FrameMethod::iterative_extremal);
  CHECK_THROWS_AS(parse_frame_method("power"), InvalidArgument);
}

TEST_CASE("finite section restricts the test space") {
  auto seg = make_segment_measure(1, 256);
  FrameOptions opt;
  opt.section = test::int_box(1, 3);
  auto fb = frame_bounds(seg, test::int_box(1, 8), opt);
  CHECK(fb.section_dim == 7);
  CHECK(fb.lower_A == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fb.upper_B == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("iterative inverse refuses large Gram matrices") {
  auto seg = make_segment_measure(1, 64);
  FrameOptions opt = iterative();
  opt.max_inverse_dim = 8;
  CHECK_THROWS_AS(frame_bounds(seg, test::int_box(1, 8), opt), InvalidArgument);
  CHECK(bessel_constant(seg, test::int_box(1, 8), opt) == doctest::Approx(1.0).epsilon(1e-9));
}
