#include <set>
#include <vector>

#include <doctest.h>

#include "framelab/construct.hpp"
#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "support.hpp"

using namespace framelab;

TEST_CASE("lattice_frame") {
  auto l = lattice_frame(Rational(1, 2), 1, 2, 1);
  REQUIRE(l.size() == 3);
  const double expect[6] = {-0.5, 0, 0, 0, 0.5, 0};
  for (int i = 0; i < 6; ++i) CHECK(l.coords()[i] == expect[i]);
  CHECK(l.is_exact());
  CHECK(l.generator().tag() == "lattice(1/2,1,2,1)");
  CHECK(lattice_frame(Rational(1), 2, 2, 3).size() == 49);
  CHECK(lattice_frame(Rational(1, 3), 3, 4, 2).size() == 125);
  CHECK_THROWS_AS(lattice_frame(Rational(0), 1, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(lattice_frame(Rational(1), 3, 2, 2), InvalidArgument);
}

TEST_CASE("exotic_onb") {
  auto e = exotic_onb(1);
  REQUIRE(e.size() == 3);
  std::set<std::pair<double, double>> got;
  for (std::size_t i = 0; i < 3; ++i) got.insert({e.freq(i)[0], e.freq(i)[1]});
  CHECK(got == std::set<std::pair<double, double>>{{0, 1}, {-1, 2}, {1, 2}});
  CHECK(exotic_onb(16).size() == 33);
  CHECK_THROWS_AS(exotic_onb(51), InvalidArgument);

  auto seg = make_segment_measure(2, 1024);
  auto fb = frame_bounds(seg, exotic_onb(16));
  CHECK(fb.lower_A >= 0.99);
  CHECK(fb.lower_A <= 1.01);
  CHECK(fb.upper_B >= 0.99);
  CHECK(fb.upper_B <= 1.01);
}

TEST_CASE("product_frame and set_difference") {
  FrequencySet zero(1, std::vector<Rational>{Rational(0)});
  auto gam = test::int_box(2, 1);
  auto p = product_frame(zero, gam);
  REQUIRE(p.size() == gam.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.freq(i)[0] == 0.0);
    CHECK(p.freq(i)[1] == gam.freq(i)[0]);
    CHECK(p.freq(i)[2] == gam.freq(i)[1]);
  }
  CHECK(product_frame(test::int_box(1, 2), gam).size() == 5 * 9);

  auto diff = set_difference(test::int_box(1, 4), test::int_box(1, 2));
  REQUIRE(diff.size() == 4);
  CHECK(diff.coords()[0] == -4.0);
  CHECK(diff.coords()[3] == 4.0);
}

TEST_CASE("min_merge_q") {
  CHECK(min_merge_q(1.0, 1.0) == 3);
  CHECK(min_merge_q(1.0, 1.5) == 4);
  CHECK(min_merge_q(0.5, 1.0) == 5);
  CHECK(min_merge_q(0.3, 1.0) == 7);
  CHECK_THROWS_AS(min_merge_q(0.0, 1.0), InvalidArgument);
}

TEST_CASE("merge_frames on singleton cores") {
  MergeInput in{
      .U_core = FrequencySet(1, std::vector<Rational>{Rational(0)}),
      .V_core = FrequencySet(1, std::vector<Rational>{Rational(0)}),
      .V_pool = FrequencySet(1, std::vector<Rational>{Rational(1), Rational(2), Rational(3)}),
      .U_pool = FrequencySet(1, std::vector<Rational>{Rational(-1), Rational(-2), Rational(-3)}),
      .q = 3,
  };
  auto r = merge_frames(in);
  CHECK(r.lambda.size() == 6);
  CHECK(r.n_mu == 3);
  CHECK(r.lambda.dim() == 2);
  CHECK(r.lower_bound == doctest::Approx(0.5));
  CHECK(r.upper_bound == doctest::Approx(8.0));
  CHECK_NOTHROW(r.plan.validate());
  CHECK(r.lambda.generator().kind == Generator::Kind::merged);
  CHECK(r.lambda.generator().q == 3);
  CHECK(r.plan.plan_id().size() == 12);

  auto again = merge_frames(in);
  CHECK(again.lambda.same_rows(r.lambda));
  CHECK(again.plan.plan_id() == r.plan.plan_id());

  in.q = 2;
  CHECK_THROWS_AS(merge_frames(in), InvalidArgument);
  in.q = 4;
  CHECK_THROWS_AS(merge_frames(in), InvalidArgument);  // pools hold only 3
  in.q = 3;
  in.V_pool = FrequencySet(1, std::vector<Rational>{Rational(0), Rational(2), Rational(3)});
  CHECK_THROWS_AS(merge_frames(in), InvalidArgument);  // pool meets core
}

TEST_CASE("MergePlan::validate catches broken plans") {
  MergeInput in{
      .U_core = test::int_box(1, 1),
      .V_core = test::int_box(1, 1),
      .V_pool = set_difference(test::int_box(1, 6), test::int_box(1, 1)),
      .U_pool = set_difference(test::int_box(1, 6), test::int_box(1, 1)),
      .q = 3,
  };
  auto plan = merge_frames(in).plan;
  CHECK_NOTHROW(plan.validate());
  auto short_f = plan;
  short_f.F[0].pop_back();
  CHECK_THROWS_AS(short_f.validate(), InvalidArgument);
  auto overlap = plan;
  overlap.F[1][0] = overlap.F[0][0];
  CHECK_THROWS_AS(overlap.validate(), InvalidArgument);
  auto range = plan;
  range.G[0][0] = 999;
  CHECK_THROWS_AS(range.validate(), InvalidArgument);
}

TEST_CASE("generator tags round-trip") {
  for (std::string tag : {"explicit", "lattice(1/2,1,2,32)", "merged(3,1f0c9a7e22b4)", "product", "exotic(16)"})
    CHECK(Generator::parse(tag).tag() == tag);
  CHECK_THROWS_AS(Generator::parse("lattice(1,2)"), FormatError);
  CHECK_THROWS_AS(Generator::parse("bogus"), FormatError);
}
