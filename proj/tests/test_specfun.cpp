#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gen.hpp"
#include "lslab/specfun.hpp"

using namespace lslab;

TEST_CASE("legendre P_n matches the explicit low-degree polynomials") {
  gen::Gen g(1);
  for (int it = 0; it < 200; ++it) {
    const double t = g.uniform(-1, 1);
    CHECK(legendre_P(0, t) == doctest::Approx(1.0));
    CHECK(legendre_P(1, t) == doctest::Approx(t));
    CHECK(legendre_P(2, t) == doctest::Approx(0.5 * (3 * t * t - 1)));
    CHECK(legendre_P(3, t) == doctest::Approx(0.5 * (5 * t * t * t - 3 * t)));
    CHECK(legendre_P(4, t) == doctest::Approx((35 * std::pow(t, 4) - 30 * t * t + 3) / 8));
  }
  CHECK_THROWS_AS(legendre_P(3, 1.1), std::domain_error);
}

TEST_CASE("legendre P_n endpoint and derivative against differences") {
  gen::Gen g(2);
  for (int n : {1, 5, 40, 300}) {
    CHECK(legendre_P(n, 1.0) == doctest::Approx(1.0));
    CHECK(legendre_P(n, -1.0) == doctest::Approx(n % 2 ? -1.0 : 1.0));
    for (int it = 0; it < 20; ++it) {
      const double t = g.uniform(-0.95, 0.95), h = 1e-6;
      const double fd = (legendre_P(n, t + h) - legendre_P(n, t - h)) / (2 * h);
      CHECK(legendre_P_deriv(n, t) == doctest::Approx(fd).epsilon(1e-5).scale(n * n));
    }
    CHECK(legendre_P_deriv(n, 1.0) == doctest::Approx(n * (n + 1) / 2.0));
  }
}

TEST_CASE("normalized associated Legendre against closed forms") {
  gen::Gen g(3);
  for (int it = 0; it < 100; ++it) {
    const double th = g.uniform(0, M_PI), c = std::cos(th), s = std::sin(th);
    CHECK(assoc_legendre_norm(0, 0, th) == doctest::Approx(std::sqrt(1 / (4 * M_PI))));
    CHECK(assoc_legendre_norm(1, 0, th) == doctest::Approx(std::sqrt(3 / (4 * M_PI)) * c));
    CHECK(assoc_legendre_norm(1, 1, th) == doctest::Approx(-std::sqrt(3 / (8 * M_PI)) * s));
    CHECK(assoc_legendre_norm(2, 1, th) == doctest::Approx(-std::sqrt(15 / (8 * M_PI)) * s * c));
    CHECK(assoc_legendre_norm(2, 2, th) == doctest::Approx(0.25 * std::sqrt(15 / (2 * M_PI)) * s * s));
    CHECK(assoc_legendre_norm(3, 3, th) == doctest::Approx(-0.125 * std::sqrt(35 / M_PI) * s * s * s));
  }
}

TEST_CASE("unsold sum: sum over orders of N_n^k squared is (2n+1)/(4 pi)") {
  gen::Gen g(4);
  for (int it = 0; it < 30; ++it) {
    const int n = g.integer(0, 1200);
    const double th = g.uniform(0, M_PI);
    AssocLegendreTable tab(n, std::cos(th), std::sin(th));
    double s = 0.0;
    for (int k = -n; k <= n; ++k) s += tab.value_signed(n, k) * tab.value_signed(n, k);
    CHECK(s == doctest::Approx((2 * n + 1) / (4 * M_PI)).epsilon(1e-11));
  }
}

TEST_CASE("column recurrence agrees with the table and survives near-pole underflow") {
  const int n_max = 4096;
  for (double th : {1e-3, 0.05, 1.3, M_PI - 1e-4}) {
    std::vector<double> col(static_cast<std::size_t>(n_max - 2000 + 1));
    assoc_legendre_column(2000, n_max, std::cos(th), std::sin(th), col);
    for (double v : col) CHECK(std::isfinite(v));
    double s = 0.0;
    AssocLegendreTable tab(300, std::cos(th), std::sin(th));
    std::vector<double> col2(301 - 7);
    assoc_legendre_column(7, 300, std::cos(th), std::sin(th), col2);
    for (int n = 7; n <= 300; ++n) s = std::max(s, std::abs(col2[n - 7] - tab.value(n, 7)));
    CHECK(s < 1e-12);
  }
}

TEST_CASE("theta derivative against central differences") {
  gen::Gen g(5);
  for (int it = 0; it < 100; ++it) {
    const int n = g.integer(0, 60), k = g.integer(0, n);
    const double th = g.uniform(0.1, M_PI - 0.1), h = 1e-6;
    const double fd = (assoc_legendre_norm(n, k, th + h) - assoc_legendre_norm(n, k, th - h)) / (2 * h);
    CHECK(dtheta_assoc_legendre(n, k, th) == doctest::Approx(fd).epsilon(1e-6).scale(n + 1));
  }
}

TEST_CASE("associated Legendre orthonormality by an independent Simpson integral") {
  const int m = 4000;
  for (int k : {0, 1, 3}) {
    for (int n1 = k; n1 <= 6; ++n1)
      for (int n2 = k; n2 <= 6; ++n2) {
        double s = 0.0;
        for (int i = 0; i <= m; ++i) {
          const double th = M_PI * i / m;
          const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
          s += w * assoc_legendre_norm(n1, k, th) * assoc_legendre_norm(n2, k, th) * std::sin(th);
        }
        s *= 2 * M_PI * (M_PI / m) / 3;
        CHECK(s == doctest::Approx(n1 == n2 ? 1.0 : 0.0).scale(1.0).epsilon(1e-9));
      }
  }
}

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2q-1 exactly") {
  const auto r2 = gauss_legendre_nodes(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)));
  CHECK(r2.weights[1] == doctest::Approx(1.0));
  for (int q : {1, 3, 8, 31, 200, 1000}) {
    const auto r = gauss_legendre_nodes(q);
    for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (int d = 0; d <= std::min(2 * q - 1, 60); ++d) {
      double s = 0.0;
      for (int i = 0; i < q; ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).scale(1.0).epsilon(1e-13));
    }
  }
  const auto ab = gauss_legendre_nodes(5, 1.0, 3.0);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += ab.weights[i] * ab.nodes[i] * ab.nodes[i] * ab.nodes[i];
  CHECK(s == doctest::Approx((81.0 - 1.0) / 4));
}

TEST_CASE("wallis integral of sin^{2n} over the sphere") {
  for (int n : {0, 1, 2, 7}) {
    const int m = 2000;
    double s = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double th = M_PI * i / m, w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
      s += w * std::pow(std::sin(th), 2 * n + 1);
    }
    s *= 2 * M_PI * (M_PI / m) / 3;
    CHECK(wallis_l2n(n) == doctest::Approx(s).epsilon(1e-10));
  }
  // (2^n n!)^2 / (2n+1)! through lgamma
  const int n = 3000;
  const double lg = 2 * (n * std::log(2.0) + std::lgamma(n + 1.0)) - std::lgamma(2.0 * n + 2.0);
  CHECK(log_wallis_l2n(n) == doctest::Approx(std::log(4 * M_PI) + lg).epsilon(1e-9));
}
