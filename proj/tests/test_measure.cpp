#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lslab/density.hpp"
#include "lslab/measure.hpp"
#include "lslab/measure_spec.hpp"

using namespace lslab;

namespace {

QuadraturePolicy pol(int degree) {
  QuadraturePolicy p;
  p.degree = degree;
  p.p = 2.0;
  return p;
}

// Monte Carlo-free oracle: area of a cap of radius r is 2 pi (1 - cos r)
double cap_area(double r) { return 2 * M_PI * (1 - std::cos(r)); }

}  // namespace

TEST_CASE("axisymmetric regions get exact masses") {
  gen::Gen g(21);
  for (int it = 0; it < 40; ++it) {
    const Point3 c = g.point();
    const double r1 = g.uniform(0.01, 1.5), r2 = g.uniform(0.01, 1.5);
    CHECK(region_measure(Region::cap(c, r1), pol(10)).total_mass() == doctest::Approx(cap_area(r1)));
    const Region two = Region::set_union(Region::cap(c, r1), Region::cap(-c, r2));
    CHECK(region_measure(two.complement(), pol(10)).total_mass() ==
          doctest::Approx(4 * M_PI - cap_area(r1) - cap_area(r2)));
    CHECK(region_measure(Region::tube(GeodesicAxis{c}, r1), pol(10)).total_mass() ==
          doctest::Approx(tube_volume(r1)));
  }
  CHECK(region_measure(Region::all(), pol(4)).total_mass() == doctest::Approx(4 * M_PI));
  CHECK_THROWS(region_measure(parse_region("cap(0,0,inv-lambda)"), pol(4)));
}

TEST_CASE("non-coaxial regions fall back to a pointwise indicator") {
  const Region r = Region::set_union(Region::cap(kNorthPole, 0.5), Region::cap(Point3::from_spherical(2.0, 1.0), 0.5));
  const Measure m = region_measure(r, pol(30));
  CHECK_FALSE(common_axis(m));
  CHECK(m.total_mass() == doctest::Approx(2 * cap_area(0.5)).epsilon(2e-2));
}

TEST_CASE("the p-dependent grid policy") {
  QuadraturePolicy p = pol(10);
  CHECK(p.n_theta() >= 11);
  CHECK(p.n_phi() >= 21);
  p.p = 4.0;
  CHECK(p.n_theta() >= 21);
  p.p = 3.0;
  QuadraturePolicy q = p;
  q.oversample = 1.0;
  CHECK(p.n_theta() > q.n_theta());
  const QuadratureGrid grid = lp_grid(pol(7));
  CHECK(grid.total_weight() == doctest::Approx(4 * M_PI));
}

TEST_CASE("measure specs parse, resolve and print") {
  const MeasureSpec m = parse_measure("sum(lebesgue, atom(0,0,1))");
  CHECK_FALSE(m.depends_on_lambda());
  const MeasureModel mm = m.resolve(10.0);
  REQUIRE(mm.atoms.size() == 1);
  CHECK(mm.atoms[0].mass == 1.0);
  CHECK(discretize(mm, pol(6)).total_mass() == doctest::Approx(4 * M_PI + 1));

  const MeasureSpec s = parse_measure("scaled(log-lambda, cap(0,0,inv-lambda))");
  CHECK(s.depends_on_lambda());
  const double lam = 20.0;
  CHECK(discretize(s.resolve(lam), pol(20)).total_mass() == doctest::Approx(std::log(lam) * cap_area(1 / lam)));
  CHECK(parse_measure(s.to_string()).to_string() == s.to_string());

  const MeasureSpec many = parse_measure("sum(lebesgue, atom(0,0,pow:1), scaled(2, band(0.1,0.2)))");
  CHECK(discretize(many.resolve(3.0), pol(6)).total_mass() ==
        doctest::Approx(4 * M_PI + 3 + 2 * 2 * M_PI * (std::cos(0.1) - std::cos(0.2))));
  CHECK(common_axis(discretize(parse_measure("scaled(2, cap(1,0,0.2))").resolve(1), pol(4))));

  CHECK_THROWS_AS(parse_measure("lebesgue("), ParseError);
  CHECK_THROWS_AS(parse_measure("scaled(2)"), ParseError);
  CHECK_THROWS_AS(parse_measure("atom(0,0)"), ParseError);
  CHECK_THROWS(parse_measure("scaled(-1, all)").resolve(2.0));
}

TEST_CASE("density reports on measures with known worst balls") {
  const double lam = 16, r = 1;
  // Lebesgue: every ratio is exactly 1
  const MeasureModel leb = parse_measure("lebesgue").resolve(lam);
  for (auto c : {DensityCondition::RelDense, DensityCondition::RelSparse, DensityCondition::SymDense,
                 DensityCondition::TGCC, DensityCondition::TubeSparse}) {
    const double expected = c == DensityCondition::SymDense ? 2.0 : 1.0;
    CHECK(density_report(leb, c, lam, r).worst_ratio == doctest::Approx(expected).epsilon(1e-6));
  }
  // an atom of mass m: the worst ball is centred on it
  const MeasureModel at = parse_measure("sum(lebesgue, atom(0.3,0.2,0.05))").resolve(lam);
  CenterPolicy cp;
  cp.extra_centers.push_back(Point3::from_spherical(0.3, 0.2));
  CHECK(density_report(at, DensityCondition::RelSparse, lam, r, cp).worst_ratio ==
        doctest::Approx(1 + 0.05 / ball_volume(r / lam)).epsilon(1e-6));
  // a removed cap of radius 2/lambda contains whole balls of radius 1/lambda
  const Region hole = parse_region("not(cap(0,0,0.125))");
  CHECK(density_report(hole, DensityCondition::RelDense, lam, r).worst_ratio == doctest::Approx(0.0).scale(1));
  // the band mass helper against the cap-area formula
  CHECK(band_mass(leb, kNorthPole, 0.2, 0.5) == doctest::Approx(cap_area(0.5) - cap_area(0.2)));
  CHECK(parse_condition("tgcc") == DensityCondition::TGCC);
  CHECK_THROWS(parse_condition("bogus"));
}

TEST_CASE("property: density ratios are rotation invariant for caps") {
  gen::Gen g(22);
  for (int it = 0; it < 5; ++it) {
    const Point3 c = g.point();
    const double rad = g.uniform(0.05, 0.5);
    const Region cap = Region::cap(c, rad);
    const double a = density_report(Region::cap(kNorthPole, rad), DensityCondition::RelSparse, 12, 1).worst_ratio;
    const double b = density_report(cap, DensityCondition::RelSparse, 12, 1).worst_ratio;
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
    CHECK(a <= 1.0 + 1e-12);
  }
}

TEST_CASE("property: local ball masses are exact when the ball swallows a cap") {
  gen::Gen g(23);
  for (int it = 0; it < 50; ++it) {
    const Point3 c = g.point();
    const double r1 = g.uniform(0.01, 0.5), big = r1 + g.uniform(0.01, 0.5);
    const double d = g.uniform(0.0, big - r1);
    MeasureModel m;
    m.parts.push_back({1.0, Region::cap(c, r1)});
    const Point3 centre = g.at_distance(c, d);
    CHECK(band_mass(m, centre, 0.0, big) == doctest::Approx(cap_area(r1)).epsilon(1e-12));
    // the complement then has ball mass vol B - cap area
    MeasureModel rest;
    rest.parts.push_back({1.0, Region::cap(c, r1).complement()});
    CHECK(band_mass(rest, centre, 0.0, big) == doctest::Approx(cap_area(big) - cap_area(r1)).epsilon(1e-12));
  }
}
