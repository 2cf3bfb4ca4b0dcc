#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lslab/geom.hpp"
#include "lslab/region.hpp"

using namespace lslab;

namespace {

// int_{S^2} x^a y^b z^c dS = 2 G(A) G(B) G(C) / G(A+B+C), A = (a+1)/2, ... for even a, b, c
double monomial_integral(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  const double A = (a + 1) / 2.0, B = (b + 1) / 2.0, C = (c + 1) / 2.0;
  return 2.0 * std::exp(std::lgamma(A) + std::lgamma(B) + std::lgamma(C) - std::lgamma(A + B + C));
}

bool close(const Point3& a, const Point3& b, double tol = 1e-12) {
  return std::abs(a.x - b.x) < tol && std::abs(a.y - b.y) < tol && std::abs(a.z - b.z) < tol;
}

}  // namespace

TEST_CASE("frames are orthonormal and with_pole puts the pole on z") {
  gen::Gen g(11);
  for (int it = 0; it < 200; ++it) {
    const Point3 p = g.point(), x = g.point();
    const Frame f = Frame::with_pole(p);
    CHECK(close(f.pole(), p));
    CHECK(close(f.to_local(f.to_world(x)), x));
    CHECK(close(f.to_world(kNorthPole), p));
    const Frame ff = f * f.transposed();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(ff(r, c) == doctest::Approx(r == c ? 1.0 : 0.0).scale(1.0));
    // rotations keep distances
    const Frame rot = Frame::axis_angle(g.point(), g.uniform(0, 6.28));
    CHECK(geodesic_distance(rot.to_world(p), rot.to_world(x)) == doctest::Approx(geodesic_distance(p, x)));
  }
  CHECK(close(Frame::with_pole(kNorthPole).to_world({1, 0, 0}), {1, 0, 0}));
}

TEST_CASE("geodesic distance is a metric on random triples") {
  gen::Gen g(12);
  for (int it = 0; it < 500; ++it) {
    const Point3 a = g.point(), b = g.point(), c = g.point();
    const double ab = geodesic_distance(a, b), bc = geodesic_distance(b, c), ac = geodesic_distance(a, c);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab == doctest::Approx(geodesic_distance(b, a)));
    CHECK(ab >= 0.0);
    CHECK(ab <= M_PI + 1e-15);
    const double d = g.uniform(0, M_PI);
    CHECK(geodesic_distance(a, g.at_distance(a, d)) == doctest::Approx(d).epsilon(1e-10));
  }
  CHECK(geodesic_distance(kNorthPole, kNorthPole) == 0.0);
  // tiny distances keep full relative accuracy
  const Point3 q = Point3::from_spherical(1e-9, 0.0);
  CHECK(geodesic_distance(kNorthPole, q) == doctest::Approx(1e-9).epsilon(1e-12));
}

TEST_CASE("tube distance") {
  gen::Gen g(13);
  const GeodesicAxis eq{kNorthPole};
  for (int it = 0; it < 100; ++it) {
    const double th = g.uniform(0, M_PI), ph = g.uniform(0, 6.28);
    CHECK(tube_distance(Point3::from_spherical(th, ph), eq) == doctest::Approx(std::abs(M_PI / 2 - th)));
  }
  CHECK(ball_volume(M_PI) == doctest::Approx(4 * M_PI));
  CHECK(tube_volume(M_PI / 2) == doctest::Approx(4 * M_PI));
}

TEST_CASE("full grid integrates monomials of degree up to its exactness bound") {
  gen::Gen g(14);
  for (int nt : {2, 5, 9, 17}) {
    const int np = 2 * nt;
    const Frame f = Frame::with_pole(g.point());
    const QuadratureGrid grid = make_grid(nt, np, f);
    CHECK(grid.total_weight() == doctest::Approx(4 * M_PI));
    const int dmax = std::min(2 * nt - 1, np - 1);
    for (int it = 0; it < 40; ++it) {
      const int a = g.integer(0, dmax), b = g.integer(0, dmax - a), c = g.integer(0, dmax - a - b);
      double s = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point3 x = grid.point(i);
        s += grid.weight(i) * std::pow(x.x, a) * std::pow(x.y, b) * std::pow(x.z, c);
      }
      CHECK(s == doctest::Approx(monomial_integral(a, b, c)).scale(1.0).epsilon(1e-13));
    }
  }
  CHECK_THROWS(make_grid(1, 8));
  CHECK_THROWS(make_grid(4, 3));
}

TEST_CASE("band grid weights add up to the band area") {
  gen::Gen g(15);
  for (int it = 0; it < 50; ++it) {
    double a = g.uniform(0, M_PI), b = g.uniform(0, M_PI);
    if (a > b) std::swap(a, b);
    const QuadratureGrid grid = make_band_grid(a, b, 6, 9, Frame::with_pole(g.point()));
    CHECK(grid.total_weight() == doctest::Approx(2 * M_PI * (std::cos(a) - std::cos(b))));
    // all nodes lie in the band
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double th = geodesic_distance(grid.frame().pole(), grid.point(i));
      CHECK(th >= a - 1e-12);
      CHECK(th <= b + 1e-12);
    }
  }
}

TEST_CASE("fibonacci lattices") {
  const auto pts = fibonacci_sphere(1000);
  CHECK(pts.size() == 1000);
  int north = 0;
  for (const auto& p : pts) {
    CHECK(p.norm() == doctest::Approx(1.0));
    north += p.z > 0;
  }
  CHECK(std::abs(north - 500) <= 2);
  const Frame f = Frame::with_pole(Point3::from_spherical(1.0, 2.0));
  for (const auto& p : fibonacci_cap(200, 0.3, f)) CHECK(geodesic_distance(p, f.pole()) <= 0.3 + 1e-12);
}

TEST_CASE("region grammar parses, prints and round-trips") {
  const char* specs[] = {"all",
                         "cap(0.5,1,0.2)",
                         "tube(0,0,0.1)",
                         "band(0.5,1.2)",
                         "not(cap(0,0,inv-lambda))",
                         "union(cap(0,0,0.1),cap(3.141592653589793,0,0.1))",
                         "inter(band(0.2,2),not(tube(1,1,inv-sqrt-lambda)))",
                         "cap(0,0,powlog:1:-0.5:-1)",
                         "cap(0,0,pow:-0.25)",
                         "cap(0,0,log-lambda)",
                         "cap(0,0,const:0.3)"};
  // printed angles come back from the unit vector, so compare meaning rather than bytes
  gen::Gen g(17);
  for (const char* s : specs) {
    const Region r = parse_region(s).resolve(20.0);
    const Region again = parse_region(parse_region(s).to_string()).resolve(20.0);
    for (int it = 0; it < 500; ++it) {
      const Point3 x = g.point();
      CHECK(r.contains(x) == again.contains(x));
    }
  }
  CHECK(parse_region("cap(0,0,0.25)").to_string() == "cap(0,0,0.25)");
  CHECK(parse_region("cap(0,0,inv-lambda)").depends_on_lambda());
  CHECK_FALSE(parse_region("cap(0,0,0.1)").depends_on_lambda());
  CHECK(parse_region("cap(0,0,inv-lambda)").resolve(10).to_string() == parse_region("cap(0,0,0.1)").to_string());
}

TEST_CASE("region parse errors carry a position") {
  try {
    parse_region("cap(0,0,0.1");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
  CHECK_THROWS_AS(parse_region("disc(0,0,1)"), ParseError);
  CHECK_THROWS_AS(parse_region("cap(0,0,1) trailing"), ParseError);
  CHECK_THROWS_AS(parse_region("cap(0,0,x)"), ParseError);
  CHECK_THROWS(parse_region("cap(0,0,-1)").resolve(1.0));
}

TEST_CASE("region membership agrees with the geometric definitions") {
  gen::Gen g(16);
  const Point3 c = Point3::from_spherical(0.7, 0.4);
  const Region cap = Region::cap(c, 0.5);
  const Region tube = Region::tube(GeodesicAxis{c}, 0.2);
  const Region band = Region::band(0.3, 0.9, c);
  for (int it = 0; it < 2000; ++it) {
    const Point3 x = g.point();
    const double d = geodesic_distance(c, x);
    CHECK(cap.contains(x) == (d <= 0.5));
    CHECK(tube.contains(x) == (std::abs(M_PI / 2 - d) <= 0.2));
    CHECK(band.contains(x) == (d >= 0.3 && d <= 0.9));
    CHECK(Region::set_union(cap, tube).contains(x) == (cap.contains(x) || tube.contains(x)));
    CHECK(Region::intersection(cap, band).contains(x) == (cap.contains(x) && band.contains(x)));
    CHECK(Region::all().contains(x));
    // rotating the region is the same as rotating the point back
    const Frame rot = Frame::axis_angle({0, 1, 0}, 0.3);
    CHECK(cap.rotated(rot).contains(rot.to_world(x)) == cap.contains(x));
  }
  CHECK_THROWS(parse_region("cap(0,0,inv-lambda)").contains(kNorthPole));
}

TEST_CASE("axial form merges coaxial primitives") {
  const Point3 c = Point3::from_spherical(0.4, 1.1);
  const Region two = Region::set_union(Region::cap(c, 0.2), Region::cap(-c, 0.3)).complement();
  const auto f = axial_form(two);
  REQUIRE(f);
  REQUIRE(f->intervals.size() == 1);
  CHECK(f->intervals[0].first == doctest::Approx(0.2));
  CHECK(f->intervals[0].second == doctest::Approx(M_PI - 0.3));
  CHECK(axial_form(Region::tube(GeodesicAxis{c}, 0.1))->intervals[0].first == doctest::Approx(M_PI / 2 - 0.1));
  CHECK_FALSE(axial_form(Region::set_union(Region::cap(kNorthPole, 0.1), Region::cap(c, 0.1))));
  CHECK_FALSE(axial_form(Region::all())->axis);
}
