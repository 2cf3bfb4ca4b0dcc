#include "lslab/interval1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lslab/specfun.hpp"

namespace lslab {

std::string to_string(BoundaryCondition bc) { return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann"; }

BoundaryCondition parse_boundary_condition(const std::string& s) {
  if (s == "dirichlet") return BoundaryCondition::Dirichlet;
  if (s == "neumann") return BoundaryCondition::Neumann;
  throw std::invalid_argument("unknown boundary condition '" + s + "'");
}

IntervalBasis::IntervalBasis(BoundaryCondition b, double l) : bc(b), lambda(l) {
  if (!(l >= 1.0)) throw std::invalid_argument("interval basis: lambda must be >= 1");
}

std::size_t IntervalBasis::size() const {
  return static_cast<std::size_t>(max_frequency()) + (bc == BoundaryCondition::Neumann ? 1 : 0);
}

int IntervalBasis::frequency(std::size_t i) const {
  return static_cast<int>(i) + (bc == BoundaryCondition::Dirichlet ? 1 : 0);
}

double IntervalBasis::value(std::size_t i, double x) const {
  const int k = frequency(i);
  if (bc == BoundaryCondition::Dirichlet) return std::sqrt(2.0 / kPi) * std::sin(k * x);
  if (k == 0) return 1.0 / std::sqrt(kPi);
  return std::sqrt(2.0 / kPi) * std::cos(k * x);
}

std::vector<double> IntervalBasis::values(double x) const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = value(i, x);
  return v;
}

IntervalMeasure IntervalMeasure::lebesgue(int intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw std::invalid_argument("Simpson grid needs an even interval count");
  IntervalMeasure m;
  m.density.assign(static_cast<std::size_t>(intervals) + 1, 1.0);
  return m;
}

IntervalMeasure& IntervalMeasure::add_atom(double x, double mass) {
  if (x < 0.0 || x > kPi) throw std::invalid_argument("atom outside [0, pi]");
  if (mass < 0.0) throw std::invalid_argument("atom mass must be nonnegative");
  atoms.push_back({x, mass});
  return *this;
}

namespace {

// composite Simpson weights on [0, pi]
std::vector<double> simpson_weights(int m) {
  const double h = kPi / m;
  std::vector<double> w(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) w[static_cast<std::size_t>(i)] = (i == 0 || i == m) ? h / 3 : (i % 2 ? 4 * h / 3 : 2 * h / 3);
  return w;
}

}  // namespace

double IntervalMeasure::mass(double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, kPi);
  double s = 0.0;
  if (b > a) {
    // density is piecewise linear between samples for this purpose
    const int m = intervals();
    const double h = kPi / m;
    for (int i = 0; i < m; ++i) {
      const double x0 = i * h, x1 = x0 + h;
      const double lo = std::max(a, x0), hi = std::min(b, x1);
      if (hi <= lo) continue;
      const double d0 = density[static_cast<std::size_t>(i)], d1 = density[static_cast<std::size_t>(i) + 1];
      auto at = [&](double x) { return d0 + (d1 - d0) * (x - x0) / h; };
      s += 0.5 * (at(lo) + at(hi)) * (hi - lo);
    }
  }
  for (const auto& at : atoms)
    if (at.x >= a && at.x <= b) s += at.mass;
  return s;
}

HermitianMatrix interval_gram(const IntervalBasis& basis, const IntervalMeasure& mu) {
  const int m = mu.intervals();
  if (m < 8 * basis.max_frequency()) throw std::invalid_argument("interval grid too coarse: need >= 8 floor(lambda) intervals");
  const std::size_t n = basis.size();
  const auto w = simpson_weights(m);
  std::vector<double> g(n * n, 0.0);
  auto add = [&](double x, double weight) {
    if (weight == 0.0) return;
    const auto v = basis.values(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i * n + j] += weight * v[i] * v[j];
  };
  for (int i = 0; i <= m; ++i)
    add(i * kPi / m, w[static_cast<std::size_t>(i)] * mu.density[static_cast<std::size_t>(i)]);
  for (const auto& a : mu.atoms) add(a.x, a.mass);
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = g[i * n + j];
  return h;
}

double IntervalFunction::operator()(double x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * basis.value(i, x);
  return s;
}

IntervalFunction random_interval_function(const IntervalBasis& basis, std::uint64_t seed) {
  SplitMix64 rng(seed);
  IntervalFunction f{basis, std::vector<double>(basis.size())};
  double s = 0.0;
  for (auto& c : f.coeffs) {
    c = rng.normal_pair().first;
    s += c * c;
  }
  for (auto& c : f.coeffs) c /= std::sqrt(s);
  return f;
}

std::vector<CounterexampleRow> dirichlet_counterexample(const std::vector<double>& lambda_list, double atom_at) {
  std::vector<CounterexampleRow> rows;
  for (double lambda : lambda_list) {
    if (!(lambda >= 2.0)) throw std::invalid_argument("dirichlet_counterexample: lambda must be >= 2");
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
      const IntervalBasis basis(bc, lambda);
      IntervalMeasure mu = IntervalMeasure::lebesgue(std::max(8, 8 * basis.max_frequency()));
      mu.add_atom(atom_at, 1.0);
      const auto es = hermitian_eigs(interval_gram(basis, mu));
      const double r = 1.0 / lambda;
      const double vol = std::min(atom_at + r, kPi) - std::max(atom_at - r, 0.0);
      rows.push_back({bc, lambda, es.values.back(), mu.mass(atom_at - r, atom_at + r) / vol});
    }
  }
  return rows;
}

double near_boundary_mass(const IntervalFunction& f, double delta, double lambda, double p) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("near_boundary_mass: need 0 < delta < 1");
  if (!(p >= 1.0)) throw std::invalid_argument("near_boundary_mass: need p >= 1");
  const auto rule = gauss_legendre_nodes(24);
  auto integral = [&](double a, double b, int panels) {
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int q = 0; q < panels; ++q) {
      const double lo = a + q * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = lo + 0.5 * h * (rule.nodes[i] + 1.0);
        s += 0.5 * h * rule.weights[i] * std::pow(std::abs(f(x)), p);
      }
    }
    return s;
  };
  const int panels = 4 * (f.basis.max_frequency() + 1);
  const double num = integral(0.0, delta / lambda, 1);
  const double den = integral(0.0, kPi, panels);
  if (!(den > 0.0)) throw std::domain_error("near_boundary_mass: zero function");
  return std::pow(num / den, 1.0 / p);
}

double interval_heat_diag(BoundaryCondition bc, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("heat diagonal needs t > 0");
  const int kmax = static_cast<int>(std::ceil(std::sqrt(40.0 / t))) + 8;
  double s = bc == BoundaryCondition::Neumann ? 1.0 / kPi : 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double e = bc == BoundaryCondition::Neumann ? std::cos(k * x) : std::sin(k * x);
    s += std::exp(-k * k * t) * (2.0 / kPi) * e * e;
  }
  return s;
}

std::vector<HeatDiagRow> neumann_heat_diag(const std::vector<double>& t_list, const std::vector<double>& x_list) {
  std::vector<HeatDiagRow> rows;
  for (double t : t_list) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("neumann_heat_diag: t must lie in (0, 1]");
    for (double x : x_list)
      rows.push_back({t, x, interval_heat_diag(BoundaryCondition::Neumann, t, x) * std::sqrt(t)});
  }
  return rows;
}

}  // namespace lslab
