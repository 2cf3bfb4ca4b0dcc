#include "lslab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lslab/kernels.hpp"
#include "lslab/specfun.hpp"

namespace lslab {

int band_degree(double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("band_degree: lambda must be >= 0");
  long n = static_cast<long>(std::floor((std::sqrt(1.0 + 4.0 * lambda * lambda) - 1.0) / 2.0));
  // relative slack so that band(sqrt(N(N+1))) keeps degree N after rounding
  const double l2 = lambda * lambda * (1.0 + 1e-13);
  while (n > 0 && static_cast<double>(n) * (n + 1) > l2) --n;
  while (static_cast<double>(n + 1) * (n + 2) <= l2) ++n;
  return static_cast<int>(n);
}

BasisIndex BasisIndex::band(double lambda) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("band basis needs lambda >= 1");
  BasisIndex b;
  b.kind_ = Kind::Band;
  b.lambda_ = lambda;
  b.n_lo_ = 0;
  b.n_hi_ = band_degree(lambda);
  if (b.n_hi_ > kMaxDegree) throw std::invalid_argument("band basis degree too large");
  return b;
}

BasisIndex BasisIndex::eigenspace(int n) {
  if (n < 0 || n > kMaxDegree) throw std::invalid_argument("eigenspace degree out of range");
  BasisIndex b;
  b.kind_ = Kind::Eigenspace;
  b.lambda_ = degree_frequency(n);
  b.n_lo_ = b.n_hi_ = n;
  return b;
}

std::size_t BasisIndex::size() const {
  if (kind_ == Kind::Eigenspace) return static_cast<std::size_t>(2 * n_hi_ + 1);
  return static_cast<std::size_t>(n_hi_ + 1) * static_cast<std::size_t>(n_hi_ + 1);
}

int BasisIndex::degree(std::size_t i) const {
  if (kind_ == Kind::Eigenspace) return n_hi_;
  int n = static_cast<int>(std::sqrt(static_cast<double>(i)));
  while (static_cast<std::size_t>(n) * n > i) --n;
  while (static_cast<std::size_t>(n + 1) * (n + 1) <= i) ++n;
  return n;
}

int BasisIndex::order(std::size_t i) const {
  const int n = degree(i);
  if (kind_ == Kind::Eigenspace) return static_cast<int>(i) - n;
  return static_cast<int>(i) - n * n - n;
}

long BasisIndex::index_of(int n, int k) const {
  if (n < n_lo_ || n > n_hi_ || k < -n || k > n) return -1;
  if (kind_ == Kind::Eigenspace) return k + n;
  return static_cast<long>(n) * n + n + k;
}

std::string BasisIndex::to_string() const {
  char buf[64];
  if (kind_ == Kind::Eigenspace)
    std::snprintf(buf, sizeof buf, "eig:%d", n_hi_);
  else
    std::snprintf(buf, sizeof buf, "band:%.17g", lambda_);
  return buf;
}

double SpectralFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

std::pair<int, int> SpectralFunction::order_range() const {
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx(0.0)) continue;
    const int k = basis.order(i);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  if (lo > hi) return {0, 0};
  return {lo, hi};
}

namespace {

double abs_pow(cplx v, double p) {
  if (p == 2.0) return std::norm(v);
  return std::pow(std::abs(v), p);
}

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
}

}  // namespace

double lp_integral(const SpectralFunction& f, double p, const Measure& mu) {
  check_p(p);
  if (std::isinf(p)) throw std::invalid_argument("lp_integral: p must be finite");
  double total = 0.0;
  for (const auto& term : mu.terms) {
    const GridSamples v = evaluate(f, term.grid);
    double s = 0.0;
    for (std::size_t r = 0; r < term.grid.rings().size(); ++r) {
      const Ring& ring = term.grid.rings()[r];
      const std::size_t off = term.grid.ring_offset(r);
      double rs = 0.0;
      for (int j = 0; j < ring.n_phi; ++j) {
        const std::size_t i = off + static_cast<std::size_t>(j);
        rs += term.density_at(i) * abs_pow(v.values[i], p);
      }
      s += ring.weight * rs;
    }
    total += term.scale * s;
  }
  for (const auto& a : mu.atoms)
    if (a.mass > 0.0) total += a.mass * abs_pow(evaluate_at(f, a.point), p);
  return total;
}

double lp_norm(const SpectralFunction& f, double p, const Measure& mu) {
  check_p(p);
  if (!std::isinf(p)) return std::pow(lp_integral(f, p, mu), 1.0 / p);
  double m = 0.0;
  for (const auto& term : mu.terms) {
    if (term.scale <= 0.0) continue;
    const GridSamples v = evaluate(f, term.grid);
    for (std::size_t i = 0; i < v.values.size(); ++i)
      if (term.density_at(i) > 0.0) m = std::max(m, std::abs(v.values[i]));
  }
  for (const auto& a : mu.atoms)
    if (a.mass > 0.0) m = std::max(m, std::abs(evaluate_at(f, a.point)));
  return m;
}

QuadraturePolicy policy_for(const SpectralFunction& f, double p, double oversample) {
  QuadraturePolicy pol;
  pol.degree = f.basis.max_degree();
  const auto [lo, hi] = f.order_range();
  pol.azimuthal_spread = hi - lo;
  pol.p = p;
  pol.oversample = oversample;
  return pol;
}

double lp_norm(const SpectralFunction& f, double p, double oversample) {
  return lp_norm(f, p, Measure::lebesgue(lp_grid(policy_for(f, p, oversample), f.frame)));
}

double gradient_lp_norm(const SpectralFunction& f, double p, double oversample) {
  check_p(p);
  QuadraturePolicy pol = policy_for(f, p, oversample);
  // |grad f|^2 mixes orders k and k +- 1
  pol.azimuthal_spread += 2;
  const QuadratureGrid grid = lp_grid(pol, f.frame);
  const RealSamples g = gradient_norm_samples(f, grid);
  if (std::isinf(p)) return *std::max_element(g.values.begin(), g.values.end());
  double s = 0.0;
  for (std::size_t r = 0; r < grid.rings().size(); ++r) {
    const Ring& ring = grid.rings()[r];
    const std::size_t off = grid.ring_offset(r);
    double rs = 0.0;
    for (int j = 0; j < ring.n_phi; ++j) rs += std::pow(g.values[off + static_cast<std::size_t>(j)], p);
    s += ring.weight * rs;
  }
  return std::pow(s, 1.0 / p);
}

SpectralFunction zonal(int n, const Point3& xi) {
  if (n < 1) throw std::invalid_argument("zonal: n must be >= 1");
  SpectralFunction f{BasisIndex::eigenspace(n), {}, Frame::with_pole(xi)};
  f.coeffs.assign(f.basis.size(), cplx(0.0));
  f.coeffs[static_cast<std::size_t>(n)] =
      std::sqrt((2.0 * n + 1.0) / kFourPi) / std::sqrt(degree_frequency(n));
  return f;
}

SpectralFunction zonal_world(int n, const Point3& xi) {
  if (n < 1) throw std::invalid_argument("zonal: n must be >= 1");
  SpectralFunction f{BasisIndex::eigenspace(n), {}, Frame::identity()};
  const double scale = 1.0 / std::sqrt(degree_frequency(n));
  f.coeffs = basis_values(f.basis, xi.normalized());
  for (auto& c : f.coeffs) c = scale * std::conj(c);
  return f;
}

double zonal_closed_form(int n, const Point3& xi, const Point3& x) {
  const double u = std::clamp(dot(xi, x), -1.0, 1.0);
  return (2.0 * n + 1.0) / kFourPi * legendre_P(n, u) / std::sqrt(degree_frequency(n));
}

SpectralFunction beam(int n, const GeodesicAxis& gamma) {
  if (n < 1) throw std::invalid_argument("beam: n must be >= 1");
  SpectralFunction f{BasisIndex::eigenspace(n), {}, Frame::with_pole(gamma.axis)};
  f.coeffs.assign(f.basis.size(), cplx(0.0));
  // cancels the Condon-Shortley sign of Y_{n,n}
  f.coeffs.back() = (n % 2 == 0) ? 1.0 : -1.0;
  return f;
}

SpectralFunction projector_testfn(double lambda, const Point3& y, const MultiplierSpec& psi) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("projector_testfn: lambda must be >= 1");
  const int N = multiplier_degree(psi, lambda);
  SpectralFunction f{BasisIndex::band(std::max(1.0, degree_frequency(N))), {}, Frame::with_pole(y)};
  f.coeffs.assign(f.basis.size(), cplx(0.0));
  for (int n = 0; n <= f.basis.max_degree(); ++n) {
    const double w = psi(n * (n + 1.0) / (lambda * lambda));
    f.coeffs[static_cast<std::size_t>(f.basis.index_of(n, 0))] = w * std::sqrt((2.0 * n + 1.0) / kFourPi);
  }
  return f;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::pair<double, double> SplitMix64::normal_pair() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

SpectralFunction random_function(const BasisIndex& basis, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SpectralFunction f{basis, std::vector<cplx>(basis.size()), Frame::identity()};
  for (auto& c : f.coeffs) {
    const auto [a, b] = rng.normal_pair();
    c = cplx(a, b) / std::sqrt(2.0);
  }
  const double nrm = f.l2_norm();
  for (auto& c : f.coeffs) c /= nrm;
  return f;
}

SpectralFunction random_band_function(double lambda, std::uint64_t seed) {
  return random_function(BasisIndex::band(lambda), seed);
}

SpectralFunction harmonic_extension(const SpectralFunction& f, double t) {
  if (std::abs(t) > 10.0 / f.basis.lambda())
    throw std::out_of_range("harmonic_extension: |t| must be <= 10/lambda");
  SpectralFunction h = f;
  for (std::size_t i = 0; i < h.coeffs.size(); ++i)
    h.coeffs[i] *= std::exp(degree_frequency(h.basis.degree(i)) * t);
  return h;
}

namespace {

void check_compatible(const SpectralFunction& a, const SpectralFunction& b) {
  if (!(a.basis == b.basis) || a.frame.data() != b.frame.data())
    throw std::invalid_argument("functions live on different bases or frames");
}

}  // namespace

SpectralFunction operator+(const SpectralFunction& a, const SpectralFunction& b) {
  check_compatible(a, b);
  SpectralFunction s = a;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] += b.coeffs[i];
  return s;
}

SpectralFunction operator*(cplx s, const SpectralFunction& f) {
  SpectralFunction g = f;
  for (auto& c : g.coeffs) c *= s;
  return g;
}

cplx inner(const SpectralFunction& f, const SpectralFunction& g) {
  check_compatible(f, g);
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) s += f.coeffs[i] * std::conj(g.coeffs[i]);
  return s;
}

std::string to_json(const SpectralFunction& f) {
  nlohmann::json j;
  const bool eig = f.basis.kind() == BasisIndex::Kind::Eigenspace;
  j["kind"] = eig ? "eigenspace" : "band";
  if (eig)
    j["lambda_or_n"] = f.basis.max_degree();
  else
    j["lambda_or_n"] = f.basis.lambda();
  j["ordering"] = "n ascending, k from -n to n";
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : f.coeffs) cs.push_back({c.real(), c.imag()});
  j["coeffs"] = std::move(cs);
  j["frame"] = f.frame.data();
  return j.dump();
}

SpectralFunction function_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  SpectralFunction f;
  if (kind == "band")
    f.basis = BasisIndex::band(j.at("lambda_or_n").get<double>());
  else if (kind == "eigenspace")
    f.basis = BasisIndex::eigenspace(j.at("lambda_or_n").get<int>());
  else
    throw std::invalid_argument("unknown basis kind '" + kind + "'");
  const auto& cs = j.at("coeffs");
  if (cs.size() != f.basis.size()) throw std::invalid_argument("coefficient count does not match basis");
  for (const auto& c : cs) f.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  if (j.contains("frame")) f.frame = Frame(j.at("frame").get<std::array<double, 9>>());
  return f;
}

void save_function(const SpectralFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(f) << '\n';
}

SpectralFunction load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return function_from_json(ss.str());
}

}  // namespace lslab
