#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "lslab/interval1d.hpp"

using namespace lslab;

namespace {

// method of images: the Neumann (+) / Dirichlet (-) heat kernel on [0, pi] on the diagonal
double images_diag(double t, double x, int sign) {
  double s = 0.0;
  for (int m = -50; m <= 50; ++m) {
    const double a = 2 * M_PI * m;
    s += std::exp(-a * a / (4 * t)) + sign * std::exp(-(2 * x + a) * (2 * x + a) / (4 * t));
  }
  return s / std::sqrt(4 * M_PI * t);
}

}  // namespace

TEST_CASE("interval bases") {
  const IntervalBasis d(BoundaryCondition::Dirichlet, 5.7), n(BoundaryCondition::Neumann, 5.7);
  CHECK(d.size() == 5);
  CHECK(n.size() == 6);
  CHECK(d.frequency(0) == 1);
  CHECK(n.frequency(0) == 0);
  CHECK(d.value(2, 0.0) == 0.0);
  CHECK(n.value(0, 1.0) == doctest::Approx(1 / std::sqrt(M_PI)));
  CHECK(parse_boundary_condition(to_string(BoundaryCondition::Neumann)) == BoundaryCondition::Neumann);
  CHECK_THROWS(parse_boundary_condition("robin"));
}

TEST_CASE("Lebesgue Gram matrix is the identity; too coarse grids are refused") {
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const IntervalBasis b(bc, 20.0);
    const HermitianMatrix g = interval_gram(b, IntervalMeasure::lebesgue(160));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) CHECK(std::abs(g(i, j) - cplx(i == j ? 1.0 : 0.0)) < 1e-12);
    CHECK_THROWS(interval_gram(b, IntervalMeasure::lebesgue(100)));
  }
  CHECK_THROWS(IntervalMeasure::lebesgue(7));
}

TEST_CASE("measure masses") {
  IntervalMeasure m = IntervalMeasure::lebesgue(64);
  m.add_atom(0.0, 2.0);
  CHECK(m.mass(0, M_PI) == doctest::Approx(M_PI + 2));
  CHECK(m.mass(0.5, 1.5) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m.mass(0.5, 1.0) + 2 == doctest::Approx(m.mass(0.0, 1.0) - 0.5).epsilon(1e-6));
}

TEST_CASE("boundary atom: Dirichlet modes vanish there, Neumann modes do not") {
  gen::Gen g(61);
  std::vector<double> lams;
  for (int i = 0; i < 8; ++i) lams.push_back(g.uniform(1.0, 60.0));
  for (const auto& row : dirichlet_counterexample(lams)) {
    const int k = static_cast<int>(std::floor(row.lambda));
    if (row.bc == BoundaryCondition::Dirichlet) {
      CHECK(row.carleson2 <= 1.0 + 1e-12);
      CHECK(row.carleson2 == doctest::Approx(1.0));
    } else {
      // rank-one update of the identity by e(0) e(0)^T: 1 + |e(0)|^2
      CHECK(row.carleson2 == doctest::Approx(1.0 + (1.0 + 2.0 * k) / M_PI).epsilon(1e-10));
    }
    // half a ball sits inside [0, pi]; the atom adds 1
    CHECK(row.sparsity_ratio == doctest::Approx(1.0 + row.lambda).epsilon(1e-10));
  }
}

TEST_CASE("interior atoms are seen by both conditions") {
  for (const auto& row : dirichlet_counterexample({10.0, 40.0}, M_PI / 2)) CHECK(row.carleson2 > 2.0);
}

TEST_CASE("near-boundary mass against hand integrals") {
  const IntervalBasis b(BoundaryCondition::Dirichlet, 3.0);
  // f = e_2 = sqrt(2/pi) sin 2x; ||f||_{L2(0,a)}^2 = (2/pi)(a/2 - sin(4a)/8)
  IntervalFunction f{b, {0.0, 1.0, 0.0}};
  const double delta = 0.3, lam = 3.0, a = delta / lam;
  const double want = std::sqrt((2 / M_PI) * (a / 2 - std::sin(4 * a) / 8));
  CHECK(near_boundary_mass(f, delta, lam, 2.0) == doctest::Approx(want).epsilon(1e-12));
  gen::Gen g(62);
  for (int it = 0; it < 20; ++it) {
    const IntervalFunction r = random_interval_function(IntervalBasis(BoundaryCondition::Dirichlet, 12), 70 + it);
    const double p = g.uniform(1, 6);
    const double small = near_boundary_mass(r, 0.1, 12, p), big = near_boundary_mass(r, 0.5, 12, p);
    CHECK(small <= big + 1e-14);
    CHECK(big <= 1.0 + 1e-12);
  }
}

TEST_CASE("heat diagonal equals the method-of-images sum") {
  gen::Gen g(63);
  for (int it = 0; it < 30; ++it) {
    const double t = std::exp(g.uniform(std::log(1e-3), std::log(2.0))), x = g.uniform(0, M_PI);
    CHECK(interval_heat_diag(BoundaryCondition::Neumann, t, x) == doctest::Approx(images_diag(t, x, 1)).epsilon(1e-10));
    CHECK(interval_heat_diag(BoundaryCondition::Dirichlet, t, x) ==
          doctest::Approx(images_diag(t, x, -1)).epsilon(1e-10).scale(1e-12));
  }
  CHECK(interval_heat_diag(BoundaryCondition::Dirichlet, 0.01, 0.0) == 0.0);
  const auto rows = neumann_heat_diag({0.01, 0.1}, {0.0, 1.0});
  CHECK(rows.size() == 4);
  // reflection doubles the boundary diagonal at small t
  CHECK(rows[0].diag_times_sqrt_t == doctest::Approx(2 / std::sqrt(4 * M_PI)).epsilon(1e-6));
  CHECK_THROWS(neumann_heat_diag({2.0}, {1.0}));
}
