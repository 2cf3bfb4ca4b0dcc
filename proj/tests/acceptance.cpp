// One PASS/FAIL line per acceptance criterion. Tolerances live here or in the
// experiment checks that each criterion delegates to.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lslab/experiments.hpp"
#include "lslab/extremal.hpp"
#include "lslab/specfun.hpp"
#include "lslab/spectrum.hpp"

using namespace lslab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Point3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), a(0.0, 2 * kPi);
  const double z = u(rng), ph = a(rng), s = std::sqrt(1 - z * z);
  return {s * std::cos(ph), s * std::sin(ph), z};
}

// ---------------------------------------------------------------------------

Outcome foundations() {
  std::mt19937_64 rng(2024);
  std::string detail;
  bool ok = true;

  // addition theorem, n up to 256
  double add = 0.0;
  for (int n : {1, 2, 8, 32, 128, 256}) {
    const BasisIndex e = BasisIndex::eigenspace(n);
    for (int it = 0; it < 8; ++it) {
      const Point3 x = random_point(rng), y = random_point(rng);
      const auto vx = basis_values(e, x), vy = basis_values(e, y);
      cplx s = 0.0;
      for (std::size_t i = 0; i < vx.size(); ++i) s += vx[i] * std::conj(vy[i]);
      const double scale = (2 * n + 1) / kFourPi;
      add = std::max(add, std::abs(s - scale * legendre_P(n, dot(x, y))) / scale);
    }
  }
  ok &= add <= 1e-10;
  detail += "addition " + fmt("%.1e", add);

  // orthonormality: dense Gram on Band(16), block Gram on H_256
  double orth = 0.0;
  {
    const BasisIndex b = BasisIndex::band(16.0);
    QuadraturePolicy p;
    p.degree = b.max_degree();
    const HermitianMatrix g =
        gram_matrix(b, Measure::lebesgue(lp_grid(p, Frame::with_pole(random_point(rng)))), Frame::with_pole(random_point(rng)));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) orth = std::max(orth, std::abs(g(i, j) - cplx(i == j ? 1.0 : 0.0)));
  }
  {
    const BasisIndex e = BasisIndex::eigenspace(256);
    QuadraturePolicy p;
    p.degree = 256;
    const ConcentrationBlocks cb = concentration_blocks(e, Measure::lebesgue(lp_grid(p)), Frame());
    for (const auto& blk : cb.blocks)
      for (std::size_t i = 0; i < blk.size; ++i)
        for (std::size_t j = 0; j < blk.size; ++j)
          orth = std::max(orth, std::abs(blk.a[i * blk.size + j] - (i == j ? 1.0 : 0.0)));
  }
  ok &= orth <= 1e-10;
  detail += ", orthonormality " + fmt("%.1e", orth);

  // quadrature exactness: degree-2N polynomials, N = 256, through |Y|^2 sums
  double quad = 0.0;
  {
    const int n = 256;
    const QuadratureGrid g = make_grid(n + 1, 2 * n + 1, Frame::with_pole(random_point(rng)));
    const Point3 xi = random_point(rng);
    // int P_n(x.xi)^2 dV = 4 pi / (2n+1)
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * std::pow(legendre_P(n, dot(g.point(i), xi)), 2);
    quad = std::abs(s - kFourPi / (2 * n + 1)) / (kFourPi / (2 * n + 1));
    // Gauss rule on monomials
    const auto r = gauss_legendre_nodes(40);
    for (int d = 0; d < 80; d += 2) {
      double m = 0.0;
      for (int i = 0; i < 40; ++i) m += r.weights[i] * std::pow(r.nodes[i], d);
      quad = std::max(quad, std::abs(m - 2.0 / (d + 1)) / (2.0 / (d + 1)));
    }
  }
  ok &= quad <= 1e-10;
  detail += ", quadrature " + fmt("%.1e", quad);

  // analytic gradient against central differences
  double grad = 0.0;
  for (int it = 0; it < 20; ++it) {
    SpectralFunction f = random_band_function(32.0, 900 + it);
    f.frame = Frame::with_pole(random_point(rng));
    const Point3 x = random_point(rng);
    const Point3 e1 = cross(x, random_point(rng)).normalized(), e2 = cross(x, e1);
    const double h = 1e-6;
    double g2 = 0.0;
    for (const Point3& e : {e1, e2}) {
      auto at = [&](double s) {
        return evaluate_at(f, {x.x * std::cos(s) + e.x * std::sin(s), x.y * std::cos(s) + e.y * std::sin(s),
                               x.z * std::cos(s) + e.z * std::sin(s)});
      };
      g2 += std::norm((at(h) - at(-h)) / (2 * h));
    }
    const double an = gradient_norm_at(f, x);
    grad = std::max(grad, std::abs(std::sqrt(g2) - an) / an);
  }
  ok &= grad <= 1e-6;
  detail += ", gradient " + fmt("%.1e", grad);
  return {ok, detail};
}

// Pass iff every check of every listed experiment passes; failing checks are named.
Outcome experiments(const std::vector<std::string>& names) {
  Outcome o{true, ""};
  std::string failures;
  for (const auto& n : names) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult r = run_experiment(n, ExperimentConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int passed = 0;
    for (const auto& c : r.checks) {
      passed += c.pass;
      if (!c.pass)
        failures += "\n      failed: " + c.anchor + " [" + c.expected + "] measured " + fmt("%.6g", c.measured) +
                    ", want " + c.tolerance;
    }
    o.pass &= passed == static_cast<int>(r.checks.size());
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += n + " " + std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks" + fmt(" (%.1fs)", secs);
  }
  o.detail += failures;
  return o;
}

Outcome determinism() {
  ExperimentConfig cfg;
  cfg.samples = 4;
  cfg.seed = 77;
  bool same = true;
  for (const char* n : {"zonal-norms", "bernstein", "meanvalue", "boundary-1d"}) {
    const ExperimentResult a = run_experiment(n, cfg), b = run_experiment(n, cfg);
    for (std::size_t i = 0; i < a.tables.size(); ++i) same &= a.tables[i].to_csv() == b.tables[i].to_csv();
    same &= a.summary_json() == b.summary_json();
  }
  return {same, same ? "repeated runs byte-identical" : "outputs differ between runs"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "foundations", foundations},
      {2, "zonal exponents", [] { return experiments({"zonal-norms"}); }},
      {3, "beam exponents", [] { return experiments({"beam-norms"}); }},
      {4, "Weyl law", [] { return experiments({"weyl"}); }},
      {5, "heat kernel", [] { return experiments({"heat-gaussian", "heat-complex"}); }},
      {6, "multiplier kernel decay", [] { return experiments({"kernel-decay"}); }},
      {7, "Bernstein", [] { return experiments({"bernstein"}); }},
      {8, "LS dichotomy, p = 2", [] { return experiments({"ls2-cap-complement"}); }},
      {9, "eigenfunction small-p constructions", [] { return experiments({"ls-eigen-smallp", "carleson-dichotomy"}); }},
      {10, "large-p necessity", [] { return experiments({"ls-eigen-largep", "carleson-largep"}); }},
      {11, "tube condition and beams", [] { return experiments({"tgcc-beam"}); }},
      {12, "boundary dichotomy (1-D)", [] { return experiments({"boundary-1d"}); }},
      {13, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  criterion %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
