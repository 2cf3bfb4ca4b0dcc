#include "lslab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "lslab/kernels.hpp"
#include "lslab/specfun.hpp"

namespace lslab {

namespace {

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// same pole (sigma = 1) or antipodal pole (sigma = -1), azimuth offset beta
struct Coaxial {
  bool ok = false;
  double sigma = 1.0;
  double beta = 0.0;
};

Coaxial coaxial(const Frame& fn, const Frame& grid) {
  const Frame r = fn.transposed() * grid;
  Coaxial c;
  if (std::abs(std::abs(r(2, 2)) - 1.0) > 1e-13) return c;
  c.ok = true;
  c.sigma = r(2, 2) > 0 ? 1.0 : -1.0;
  c.beta = std::atan2(r(1, 0), r(0, 0));
  return c;
}

bool full_sphere_constant(const MeasureTerm& t) {
  if (std::abs(t.grid.total_weight() - kFourPi) > 1e-9) return false;
  if (t.density.empty()) return true;
  return std::all_of(t.density.begin(), t.density.end(), [&](double d) { return d == t.density[0]; });
}

void check_resolution(const QuadratureGrid& g, int n_max, bool need_azimuth) {
  int min_phi = std::numeric_limits<int>::max();
  for (const auto& r : g.rings()) min_phi = std::min(min_phi, r.n_phi);
  if (g.n_theta() < n_max + 1 || (need_azimuth && min_phi < 2 * n_max + 1))
    throw std::invalid_argument("grid too coarse for degree " + std::to_string(2 * n_max) + " products");
}

// Chunked assembly: basis values for a batch of nodes, then each row of G is
// owned by one thread, so the sum order does not depend on the thread count.
constexpr std::size_t kChunk = 1024;

struct NodeBatch {
  std::vector<cplx> y;  // node-major, dim values per node
  std::vector<double> w;
};

void accumulate(HermitianMatrix& g, const NodeBatch& b, std::size_t dim) {
  const std::size_t m = b.w.size();
  const long nd = static_cast<long>(dim);
#pragma omp parallel for schedule(dynamic, 4)
  for (long il = 0; il < nd; ++il) {
    const auto i = static_cast<std::size_t>(il);
    for (std::size_t node = 0; node < m; ++node) {
      const cplx yi = b.w[node] * b.y[node * dim + i];
      if (yi == cplx(0.0)) continue;
      const cplx* row = b.y.data() + node * dim;
      for (std::size_t j = 0; j < dim; ++j) g(i, j) += yi * std::conj(row[j]);
    }
  }
}

}  // namespace

std::optional<Frame> axisymmetric_frame(const Measure& mu) {
  const auto axis = common_axis(mu);
  if (!axis) return std::nullopt;
  return Frame::with_pole(*axis);
}

HermitianMatrix gram_matrix(const BasisIndex& basis, const Measure& mu, const Frame& frame) {
  const std::size_t dim = basis.size();
  const int n_max = basis.max_degree();
  HermitianMatrix g(dim);
  for (const auto& term : mu.terms) {
    check_resolution(term.grid, n_max, true);
    const std::size_t total = term.grid.size();
    for (std::size_t start = 0; start < total; start += kChunk) {
      const std::size_t m = std::min(kChunk, total - start);
      NodeBatch b{std::vector<cplx>(m * dim), std::vector<double>(m)};
      const long ml = static_cast<long>(m);
#pragma omp parallel for schedule(static)
      for (long q = 0; q < ml; ++q) {
        const std::size_t node = start + static_cast<std::size_t>(q);
        const double w = term.scale * term.density_at(node) * term.grid.weight(node);
        b.w[static_cast<std::size_t>(q)] = w;
        if (w == 0.0) continue;
        const auto v = basis_values(basis, frame.to_local(term.grid.point(node)));
        std::copy(v.begin(), v.end(), b.y.begin() + static_cast<long>(static_cast<std::size_t>(q) * dim));
      }
      accumulate(g, b, dim);
    }
  }
  if (!mu.atoms.empty()) {
    NodeBatch b;
    for (const auto& a : mu.atoms) {
      const auto v = basis_values(basis, frame.to_local(a.point));
      b.y.insert(b.y.end(), v.begin(), v.end());
      b.w.push_back(a.mass);
    }
    accumulate(g, b, dim);
  }
  return g;
}

HermitianMatrix gram_matrix_serial(const BasisIndex& basis, const Measure& mu, const Frame& frame) {
  const std::size_t dim = basis.size();
  HermitianMatrix g(dim);
  auto add = [&](const Point3& x, double w) {
    if (w == 0.0) return;
    const auto v = basis_values(basis, frame.to_local(x));
    for (std::size_t i = 0; i < dim; ++i) {
      const cplx yi = w * v[i];
      if (yi == cplx(0.0)) continue;
      for (std::size_t j = 0; j < dim; ++j) g(i, j) += yi * std::conj(v[j]);
    }
  };
  for (const auto& term : mu.terms) {
    check_resolution(term.grid, basis.max_degree(), true);
    for (std::size_t node = 0; node < term.grid.size(); ++node)
      add(term.grid.point(node), term.scale * term.density_at(node) * term.grid.weight(node));
  }
  for (const auto& a : mu.atoms) add(a.point, a.mass);
  return g;
}

ConcentrationBlocks concentration_blocks(const BasisIndex& basis, const Measure& mu, const Frame& frame) {
  const int n_lo = basis.min_degree(), n_hi = basis.max_degree();
  ConcentrationBlocks cb{basis, frame, {}};
  for (int k = 0; k <= n_hi; ++k) {
    ConcentrationBlocks::Block b;
    b.k = k;
    b.n_lo = std::max(k, n_lo);
    b.size = static_cast<std::size_t>(n_hi - b.n_lo + 1);
    b.a.assign(b.size * b.size, 0.0);
    cb.blocks.push_back(std::move(b));
  }
  std::vector<double> col(static_cast<std::size_t>(n_hi) + 1);

  for (const auto& term : mu.terms) {
    Coaxial c;
    if (full_sphere_constant(term)) {
      c.ok = true;  // rotation invariant: any frame will do once the grid is exact
    } else {
      c = coaxial(frame, term.grid.frame());
      if (!c.ok || !term.ring_constant())
        throw std::invalid_argument("concentration_blocks: measure is not axisymmetric about the frame pole");
    }
    check_resolution(term.grid, n_hi, true);
    for (std::size_t r = 0; r < term.grid.rings().size(); ++r) {
      const Ring& ring = term.grid.rings()[r];
      const double w = term.scale * term.density_at(term.grid.ring_offset(r)) * ring.weight * ring.n_phi;
      if (w == 0.0) continue;
      for (auto& b : cb.blocks) {
        const std::span<double> out(col.data(), static_cast<std::size_t>(n_hi - b.k + 1));
        assoc_legendre_column(b.k, n_hi, c.sigma * ring.cos_theta, ring.sin_theta, out);
        const std::size_t off = static_cast<std::size_t>(b.n_lo - b.k);
        for (std::size_t i = 0; i < b.size; ++i) {
          const double wi = w * col[off + i];
          for (std::size_t j = 0; j < b.size; ++j) b.a[i * b.size + j] += wi * col[off + j];
        }
      }
    }
  }
  for (const auto& a : mu.atoms) {
    const Point3 l = frame.to_local(a.point);
    if (std::hypot(l.x, l.y) > 1e-12)
      throw std::invalid_argument("concentration_blocks: atom off the frame axis");
    auto& b = cb.blocks[0];
    const double z = l.z > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < b.size; ++i) {
      const int n = b.n_lo + static_cast<int>(i);
      col[i] = std::sqrt((2.0 * n + 1.0) / kFourPi) * (z > 0 ? 1.0 : parity(n));
    }
    for (std::size_t i = 0; i < b.size; ++i)
      for (std::size_t j = 0; j < b.size; ++j) b.a[i * b.size + j] += a.mass * col[i] * col[j];
  }
  return cb;
}

std::vector<double> concentration_eigenvalues(const BasisIndex& basis, const Measure& mu) {
  std::vector<double> vals;
  if (auto f = axisymmetric_frame(mu)) {
    const auto cb = concentration_blocks(basis, mu, *f);
    for (const auto& b : cb.blocks) {
      const auto es = jacobi_symmetric(b.a, b.size, false);
      for (double v : es.values) {
        vals.push_back(v);
        if (b.k > 0) vals.push_back(v);
      }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
  }
  return hermitian_eigs(gram_matrix(basis, mu), false).values;
}

ExtremalResult extreme_eigenpair(const BasisIndex& basis, const Measure& mu, bool want_max) {
  ExtremalResult res;
  res.certified = true;
  if (auto f = axisymmetric_frame(mu)) {
    const auto cb = concentration_blocks(basis, mu, *f);
    bool found = false;
    SpectralFunction ex{basis, std::vector<cplx>(basis.size(), cplx(0.0)), *f};
    for (const auto& b : cb.blocks) {
      const auto es = jacobi_symmetric(b.a, b.size, true);
      const std::size_t pick = want_max ? es.values.size() - 1 : 0;
      const double v = es.values[pick];
      const bool better = !found || (want_max ? v > res.value : v < res.value);
      if (!better) continue;
      found = true;
      res.value = v;
      std::fill(ex.coeffs.begin(), ex.coeffs.end(), cplx(0.0));
      for (std::size_t i = 0; i < b.size; ++i)
        ex.coeffs[static_cast<std::size_t>(basis.index_of(b.n_lo + static_cast<int>(i), b.k))] =
            es.vectors[pick][i];
    }
    res.extremizer = std::move(ex);
    return res;
  }
  const auto es = hermitian_eigs(gram_matrix(basis, mu), true);
  const std::size_t pick = want_max ? es.values.size() - 1 : 0;
  res.value = es.values[pick];
  // v* G v with G_ij = <Y_i, Y_j>_mu is the mass of f = sum conj(v_i) Y_i
  SpectralFunction ex{basis, es.vectors[pick], Frame::identity()};
  for (auto& c : ex.coeffs) c = std::conj(c);
  res.extremizer = std::move(ex);
  return res;
}

ExtremalResult ls_constant_2(const Region& region, const BasisIndex& basis) {
  const Region r = region.depends_on_lambda() ? region.resolve(basis.lambda()) : region;
  QuadraturePolicy pol;
  pol.degree = basis.max_degree();
  pol.p = 2.0;
  return extreme_eigenpair(basis, region_measure(r, pol), false);
}

ExtremalResult carleson_constant_2(const Measure& mu, const BasisIndex& basis) {
  return extreme_eigenpair(basis, mu, true);
}

double ratio_p(const SpectralFunction& f, const Measure& mu, double p, double oversample) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("ratio_p: need finite p >= 1");
  const double den = std::pow(lp_norm(f, p, oversample), p);
  if (!(den > 0.0)) throw std::domain_error("ratio_p: zero denominator");
  return lp_integral(f, p, mu) / den;
}

// ---------------------------------------------------------------------------
// general-p search

namespace {

// out_j += sum_nodes g_m conj(Y_j(x_m)), harmonics in `frame`.
void analysis(const BasisIndex& basis, const Frame& frame, const QuadratureGrid& grid,
              const std::vector<cplx>& g, std::vector<cplx>& out) {
  const int n_hi = basis.max_degree(), n_lo = basis.min_degree();
  const Coaxial c = coaxial(frame, grid.frame());
  if (!c.ok) {
    for (std::size_t m = 0; m < grid.size(); ++m) {
      if (g[m] == cplx(0.0)) continue;
      const auto y = basis_values(basis, frame.to_local(grid.point(m)));
      for (std::size_t j = 0; j < y.size(); ++j) out[j] += g[m] * std::conj(y[j]);
    }
    return;
  }
  const long nr = static_cast<long>(grid.rings().size());
  const std::size_t width = 2 * static_cast<std::size_t>(n_hi) + 1;
  // per-ring contributions, summed afterwards in ring order
  std::vector<std::vector<cplx>> part(grid.rings().size());
#pragma omp parallel
  {
    std::vector<double> col(static_cast<std::size_t>(n_hi) + 1);
    std::vector<cplx> h(width);
#pragma omp for schedule(dynamic, 1)
    for (long rl = 0; rl < nr; ++rl) {
      const auto r = static_cast<std::size_t>(rl);
      const Ring& ring = grid.rings()[r];
      const cplx* gr = g.data() + grid.ring_offset(r);
      std::fill(h.begin(), h.end(), cplx(0.0));
      bool any = false;
      for (int j = 0; j < ring.n_phi; ++j) {
        if (gr[j] == cplx(0.0)) continue;
        any = true;
        const double ph = c.sigma * ring.phi(j) + c.beta;
        const cplx z = std::polar(1.0, -ph);
        cplx zk = gr[j];
        h[static_cast<std::size_t>(n_hi)] += zk;
        for (int k = 1; k <= n_hi; ++k) {
          zk *= z;
          h[static_cast<std::size_t>(n_hi + k)] += zk;
        }
        const cplx zc = std::conj(z);
        zk = gr[j];
        for (int k = 1; k <= n_hi; ++k) {
          zk *= zc;
          h[static_cast<std::size_t>(n_hi - k)] += zk;
        }
      }
      if (!any) continue;
      auto& pr = part[r];
      pr.assign(basis.size(), cplx(0.0));
      for (int m = 0; m <= n_hi; ++m) {
        const int lo = std::max(m, n_lo);
        const std::span<double> out_col(col.data(), static_cast<std::size_t>(n_hi - m + 1));
        assoc_legendre_column(m, n_hi, c.sigma * ring.cos_theta, ring.sin_theta, out_col);
        for (int n = lo; n <= n_hi; ++n) {
          const double nv = col[static_cast<std::size_t>(n - m)];
          pr[static_cast<std::size_t>(basis.index_of(n, m))] += nv * h[static_cast<std::size_t>(n_hi + m)];
          if (m > 0)
            pr[static_cast<std::size_t>(basis.index_of(n, -m))] +=
                parity(m) * nv * h[static_cast<std::size_t>(n_hi - m)];
        }
      }
    }
  }
  for (const auto& pr : part)
    for (std::size_t j = 0; j < pr.size(); ++j) out[j] += pr[j];
}

double pow_abs(cplx v, double p) { return p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p); }

// int |f|^p dmu and its gradient with respect to (Re a, Im a), packed as complex.
double value_and_gradient(const SpectralFunction& f, const Measure& mu, double p, std::vector<cplx>* grad) {
  double total = 0.0;
  if (grad) grad->assign(f.coeffs.size(), cplx(0.0));
  for (const auto& term : mu.terms) {
    const GridSamples v = evaluate(f, term.grid);
    std::vector<cplx> gw;
    if (grad) gw.assign(v.values.size(), cplx(0.0));
    double s = 0.0;
    for (std::size_t r = 0; r < term.grid.rings().size(); ++r) {
      const Ring& ring = term.grid.rings()[r];
      const std::size_t off = term.grid.ring_offset(r);
      double rs = 0.0;
      for (int j = 0; j < ring.n_phi; ++j) {
        const std::size_t i = off + static_cast<std::size_t>(j);
        const double a = term.scale * term.density_at(i) * ring.weight;
        if (a == 0.0) continue;
        const cplx fv = v.values[i];
        rs += term.density_at(i) * pow_abs(fv, p);
        // d|f|^p / d conj(a) = p/2 |f|^{p-2} f conj(Y); the real gradient is twice that
        if (grad) {
          const double mag = std::abs(fv);
          if (mag > 0.0) gw[i] = a * p * std::pow(mag, p - 2.0) * fv;
        }
      }
      s += ring.weight * rs;
    }
    total += term.scale * s;
    if (grad) analysis(f.basis, f.frame, term.grid, gw, *grad);
  }
  for (const auto& at : mu.atoms) {
    if (at.mass <= 0.0) continue;
    const auto y = basis_values(f.basis, f.frame.to_local(at.point));
    cplx fv = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) fv += f.coeffs[j] * y[j];
    total += at.mass * pow_abs(fv, p);
    if (grad) {
      const double mag = std::abs(fv);
      if (mag > 0.0) {
        const cplx gv = at.mass * p * std::pow(mag, p - 2.0) * fv;
        for (std::size_t j = 0; j < y.size(); ++j) (*grad)[j] += gv * std::conj(y[j]);
      }
    }
  }
  return total;
}

void normalize(std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& c : a) s += std::norm(c);
  s = std::sqrt(s);
  if (!(s > 0.0)) throw std::invalid_argument("zero coefficient vector");
  for (auto& c : a) c /= s;
}

struct RunResult {
  double value;
  SpectralFunction f;
  int iterations;
};

RunResult local_search(SpectralFunction f, const Measure& mu, double p, bool maximize,
                       const SearchOptions& opt) {
  normalize(f.coeffs);
  QuadraturePolicy pol;
  pol.degree = f.basis.max_degree();
  pol.azimuthal_spread = 2 * pol.degree;
  pol.p = p;
  pol.oversample = opt.oversample;
  const Measure vol = Measure::lebesgue(lp_grid(pol, f.frame));
  const double sign = maximize ? 1.0 : -1.0;

  auto ratio = [&](const SpectralFunction& g, std::vector<cplx>* grad) {
    std::vector<cplx> ga, gb;
    const double a = value_and_gradient(g, mu, p, grad ? &ga : nullptr);
    const double b = value_and_gradient(g, vol, p, grad ? &gb : nullptr);
    if (!(b > 0.0)) throw std::domain_error("search: zero denominator");
    const double r = a / b;
    if (grad) {
      grad->resize(ga.size());
      for (std::size_t j = 0; j < ga.size(); ++j) (*grad)[j] = (ga[j] - r * gb[j]) / b;
    }
    return r;
  };

  std::vector<cplx> grad;
  double val = ratio(f, &grad);
  double step = -1.0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    // tangent part of the (signed) gradient
    cplx proj = 0.0;
    for (std::size_t j = 0; j < grad.size(); ++j) proj += std::conj(f.coeffs[j]) * grad[j];
    std::vector<cplx> d(grad.size());
    double dn2 = 0.0;
    for (std::size_t j = 0; j < grad.size(); ++j) {
      d[j] = sign * (grad[j] - proj.real() * f.coeffs[j]);
      dn2 += std::norm(d[j]);
    }
    const double dn = std::sqrt(dn2);
    if (dn == 0.0) break;
    if (step < 0.0) step = 0.1 / dn;
    bool moved = false;
    SpectralFunction trial = f;
    while (step * dn >= opt.step_tolerance) {
      for (std::size_t j = 0; j < d.size(); ++j) trial.coeffs[j] = f.coeffs[j] + step * d[j];
      normalize(trial.coeffs);
      const double tv = ratio(trial, nullptr);
      if (sign * (tv - val) >= opt.armijo * step * dn2) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
    f = std::move(trial);
    val = ratio(f, &grad);
    step *= 2.0;
  }
  return {val, std::move(f), it};
}

}  // namespace

ExtremalResult search_extremal_p(const BasisIndex& basis, const Measure& mu, double p,
                                 SearchDirection direction, std::uint64_t seed, const SearchOptions& options) {
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("search_extremal_p: need finite p > 1");
  const bool maximize = direction == SearchDirection::Max;
  const Frame frame = axisymmetric_frame(mu).value_or(Frame::identity());
  const int n_hi = basis.max_degree();
  {
    // a p = 2 grid silently misintegrates |f|^p
    QuadraturePolicy need;
    need.degree = n_hi;
    need.p = p;
    need.oversample = 1.0;
    for (const auto& t : mu.terms)
      if (t.grid.n_theta() < need.n_theta())
        throw std::invalid_argument("search_extremal_p: measure grid too coarse for |f|^p (n_theta " +
                                    std::to_string(t.grid.n_theta()) + " < " + std::to_string(need.n_theta()) + ")");
  }

  std::vector<SpectralFunction> seeds;
  auto single = [&](int n, int k, const Frame& fr) {
    SpectralFunction s{basis, std::vector<cplx>(basis.size(), cplx(0.0)), fr};
    s.coeffs[static_cast<std::size_t>(basis.index_of(n, k))] = 1.0;
    return s;
  };
  const Point3 centre = mu.atoms.empty() ? frame.pole() : mu.atoms.front().point;
  seeds.push_back(single(n_hi, 0, Frame::with_pole(centre)));
  seeds.push_back(single(n_hi, n_hi, frame));
  {
    SpectralFunction s{basis, std::vector<cplx>(basis.size(), cplx(0.0)), Frame::with_pole(centre)};
    const auto psi = MultiplierSpec::plateau(0.5, 1.0);
    const double l2 = basis.lambda() * basis.lambda();
    for (int n = basis.min_degree(); n <= n_hi; ++n)
      s.coeffs[static_cast<std::size_t>(basis.index_of(n, 0))] =
          std::max(psi(n * (n + 1.0) / l2), 1e-3) * std::sqrt((2.0 * n + 1.0) / kFourPi);
    seeds.push_back(std::move(s));
  }
  if (options.restarts > 3) {
    seeds.push_back(extreme_eigenpair(basis, mu, false).extremizer);
    seeds.push_back(extreme_eigenpair(basis, mu, true).extremizer);
  }
  for (int i = 0; static_cast<int>(seeds.size()) < options.restarts; ++i) {
    SpectralFunction s = random_function(basis, seed + static_cast<std::uint64_t>(i));
    s.frame = frame;
    seeds.push_back(std::move(s));
  }
  seeds.resize(static_cast<std::size_t>(std::max(1, options.restarts)));

  ExtremalResult best;
  bool have = false;
  for (auto& s : seeds) {
    RunResult r = local_search(std::move(s), mu, p, maximize, options);
    best.iterations += r.iterations;
    if (!have || (maximize ? r.value > best.value : r.value < best.value)) {
      have = true;
      best.value = r.value;
      best.extremizer = std::move(r.f);
    }
  }
  best.certified = false;
  return best;
}

std::string to_json(const ExtremalResult& r, const std::string& measure_spec, double p,
                    const std::string& extremizer_ref) {
  nlohmann::ordered_json j;
  j["basis"] = r.extremizer.basis.to_string();
  j["measure_spec"] = measure_spec;
  j["p"] = p;
  j["value"] = r.value;
  j["certified"] = r.certified;
  j["iterations"] = r.iterations;
  j["extremizer_ref"] = extremizer_ref;
  return j.dump(2);
}

}  // namespace lslab
