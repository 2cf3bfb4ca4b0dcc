#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lslab/specfun.hpp"
#include "lslab/spectrum.hpp"

namespace lslab {

namespace {

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// Coefficients of one order k, by degree n_lo..n_hi.
struct OrderGroup {
  int k = 0;
  int n_lo = 0;
  std::vector<cplx> a;
};

std::vector<OrderGroup> order_groups(const SpectralFunction& f) {
  const BasisIndex& b = f.basis;
  if (f.coeffs.size() != b.size()) throw std::invalid_argument("coefficient count does not match basis");
  const int n_hi = b.max_degree();
  if (n_hi > kMaxDegree) throw std::invalid_argument("degree exceeds the supported maximum");
  std::vector<OrderGroup> groups;
  for (int k = -n_hi; k <= n_hi; ++k) {
    OrderGroup g;
    g.k = k;
    g.n_lo = std::max(std::abs(k), b.min_degree());
    bool any = false;
    for (int n = g.n_lo; n <= n_hi; ++n) {
      const cplx c = f.coeffs[static_cast<std::size_t>(b.index_of(n, k))];
      g.a.push_back(c);
      any = any || c != cplx(0.0);
    }
    if (any) groups.push_back(std::move(g));
  }
  return groups;
}

// Per-ring workspace: Legendre columns for the orders in use, then the
// order-k Fourier coefficients of f (and of d f / d theta).
class RingSynth {
 public:
  RingSynth(const std::vector<OrderGroup>& groups, int n_hi, bool deriv)
      : groups_(groups), n_hi_(n_hi), deriv_(deriv), need_(static_cast<std::size_t>(n_hi + 2), 0) {
    for (const auto& g : groups_) {
      const int m = std::abs(g.k);
      need_[static_cast<std::size_t>(m)] = 1;
      if (deriv_) {
        if (m + 1 <= n_hi_) need_[static_cast<std::size_t>(m + 1)] = 1;
        if (m >= 1) need_[static_cast<std::size_t>(m - 1)] = 1;
      }
    }
    cols_.resize(need_.size());
    for (std::size_t m = 0; m < need_.size(); ++m)
      if (need_[m] && static_cast<int>(m) <= n_hi_) cols_[m].resize(static_cast<std::size_t>(n_hi_) - m + 1);
    ks_.reserve(groups_.size());
    for (const auto& g : groups_) ks_.push_back(g.k);
    c_.resize(groups_.size());
    d_.resize(groups_.size());
  }

  void compute(double t, double s) {
    for (std::size_t m = 0; m < need_.size(); ++m)
      if (need_[m] && static_cast<int>(m) <= n_hi_)
        assoc_legendre_column(static_cast<int>(m), n_hi_, t, s, cols_[m]);
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
      const OrderGroup& g = groups_[gi];
      const int m = std::abs(g.k);
      const double sg = g.k < 0 ? parity(m) : 1.0;
      cplx cv = 0.0, dv = 0.0;
      for (std::size_t i = 0; i < g.a.size(); ++i) {
        const int n = g.n_lo + static_cast<int>(i);
        cv += g.a[i] * val(n, m);
        if (deriv_) dv += g.a[i] * dval(n, m);
      }
      c_[gi] = sg * cv;
      d_[gi] = sg * dv;
    }
  }

  const std::vector<int>& orders() const { return ks_; }
  const std::vector<cplx>& c() const { return c_; }
  const std::vector<cplx>& d() const { return d_; }

 private:
  double val(int n, int m) const {
    if (m > n) return 0.0;
    return cols_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n - m)];
  }
  double dval(int n, int m) const {
    if (n == 0) return 0.0;
    if (m == 0) return std::sqrt(n * (n + 1.0)) * val(n, 1);
    const double up = (m + 1 <= n) ? std::sqrt((n - m) * (n + m + 1.0)) * val(n, m + 1) : 0.0;
    return 0.5 * (up - std::sqrt((n + m) * (n - m + 1.0)) * val(n, m - 1));
  }

  const std::vector<OrderGroup>& groups_;
  int n_hi_;
  bool deriv_;
  std::vector<char> need_;
  std::vector<std::vector<double>> cols_;
  std::vector<int> ks_;
  std::vector<cplx> c_, d_;
};

// out[j] = sum_i w[i] c[i] e^{i k_i phi_j}, phi_j = sigma (phi0 + 2 pi j / n) + beta.
// `kscale` multiplies each coefficient by (i k) when set (azimuthal derivative).
void fourier_ring(const std::vector<int>& ks, const std::vector<cplx>& c, bool kscale, double sigma,
                  double beta, const Ring& ring, cplx* out) {
  const int n = ring.n_phi;
  if (ks.empty()) {
    std::fill(out, out + n, cplx(0.0));
    return;
  }
  auto coef = [&](std::size_t i) { return kscale ? cplx(0.0, ks[i]) * c[i] : c[i]; };
  if (ks.size() <= 6) {
    for (int j = 0; j < n; ++j) {
      const double ph = sigma * ring.phi(j) + beta;
      cplx s = 0.0;
      for (std::size_t i = 0; i < ks.size(); ++i) s += coef(i) * std::polar(1.0, ks[i] * ph);
      out[j] = s;
    }
    return;
  }
  const int kmin = ks.front(), kmax = ks.back();
  std::vector<cplx> dense(static_cast<std::size_t>(kmax - kmin + 1), cplx(0.0));
  for (std::size_t i = 0; i < ks.size(); ++i) dense[static_cast<std::size_t>(ks[i] - kmin)] = coef(i);
  for (int j = 0; j < n; ++j) {
    const double ph = sigma * ring.phi(j) + beta;
    const cplx z = std::polar(1.0, ph);
    cplx s = dense.back();
    for (std::size_t m = dense.size() - 1; m-- > 0;) s = s * z + dense[m];
    out[j] = s * std::polar(1.0, kmin * ph);
  }
}

// Relation between grid rings and the function frame.
struct RingMap {
  bool coaxial = false;
  double sigma = 1.0;  // +1 same pole, -1 antipodal pole
  double beta = 0.0;
};

RingMap ring_map(const Frame& fn, const Frame& grid) {
  const Frame r = fn.transposed() * grid;
  RingMap m;
  if (std::abs(std::abs(r(2, 2)) - 1.0) > 1e-13) return m;
  m.coaxial = true;
  m.sigma = r(2, 2) > 0 ? 1.0 : -1.0;
  m.beta = std::atan2(r(1, 0), r(0, 0));
  return m;
}

struct PointValue {
  cplx f, dtheta, dphi;
  double sin_t;
};

PointValue point_value(const std::vector<OrderGroup>& groups, int n_hi, const SpectralFunction& f,
                       const Point3& x, bool deriv) {
  const Point3 l = f.frame.to_local(x);
  const double s = std::hypot(l.x, l.y);
  const double t = l.z;
  const double ph = (s == 0.0) ? 0.0 : std::atan2(l.y, l.x);
  RingSynth rs(groups, n_hi, deriv);
  rs.compute(t, s);
  PointValue pv{0.0, 0.0, 0.0, s};
  for (std::size_t i = 0; i < rs.orders().size(); ++i) {
    const cplx e = std::polar(1.0, rs.orders()[i] * ph);
    pv.f += rs.c()[i] * e;
    if (deriv) {
      pv.dtheta += rs.d()[i] * e;
      pv.dphi += cplx(0.0, rs.orders()[i]) * rs.c()[i] * e;
    }
  }
  return pv;
}

double grad_norm(const PointValue& pv) {
  if (pv.sin_t == 0.0) {
    // at the pole only |k| = 1 contributes; fall back to the theta derivative
    return std::abs(pv.dtheta);
  }
  return std::sqrt(std::norm(pv.dtheta) + std::norm(pv.dphi) / (pv.sin_t * pv.sin_t));
}

}  // namespace

std::vector<cplx> basis_values(const BasisIndex& basis, const Point3& local) {
  const double s = std::hypot(local.x, local.y);
  const double ph = (s == 0.0) ? 0.0 : std::atan2(local.y, local.x);
  const AssocLegendreTable tab(basis.max_degree(), local.z, s);
  std::vector<cplx> v(basis.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int n = basis.degree(i), k = basis.order(i);
    v[i] = tab.value_signed(n, k) * std::polar(1.0, k * ph);
  }
  return v;
}

GridSamples evaluate(const SpectralFunction& f, const QuadratureGrid& grid) {
  const auto groups = order_groups(f);
  const int n_hi = f.basis.max_degree();
  GridSamples out{&grid, std::vector<cplx>(grid.size(), cplx(0.0))};
  const RingMap map = ring_map(f.frame, grid.frame());
  const long nr = static_cast<long>(grid.rings().size());
  if (!map.coaxial) {
    const long nn = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nn; ++i)
      out.values[static_cast<std::size_t>(i)] =
          point_value(groups, n_hi, f, grid.point(static_cast<std::size_t>(i)), false).f;
    return out;
  }
#pragma omp parallel
  {
    RingSynth rs(groups, n_hi, false);
#pragma omp for schedule(dynamic, 1)
    for (long r = 0; r < nr; ++r) {
      const Ring& ring = grid.rings()[static_cast<std::size_t>(r)];
      rs.compute(map.sigma * ring.cos_theta, ring.sin_theta);
      fourier_ring(rs.orders(), rs.c(), false, map.sigma, map.beta, ring,
                   out.values.data() + grid.ring_offset(static_cast<std::size_t>(r)));
    }
  }
  return out;
}

GridSamples evaluate_serial(const SpectralFunction& f, const QuadratureGrid& grid) {
  GridSamples out{&grid, std::vector<cplx>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = evaluate_at(f, grid.point(i));
  return out;
}

cplx evaluate_at(const SpectralFunction& f, const Point3& x) {
  // direct sum over the basis: Y_i computed from a full Legendre table
  const std::vector<cplx> y = basis_values(f.basis, f.frame.to_local(x));
  if (f.coeffs.size() != y.size()) throw std::invalid_argument("coefficient count does not match basis");
  cplx s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += f.coeffs[i] * y[i];
  return s;
}

RealSamples gradient_norm_samples(const SpectralFunction& f, const QuadratureGrid& grid) {
  const auto groups = order_groups(f);
  const int n_hi = f.basis.max_degree();
  RealSamples out{&grid, std::vector<double>(grid.size(), 0.0)};
  const RingMap map = ring_map(f.frame, grid.frame());
  if (!map.coaxial) {
    const long nn = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nn; ++i)
      out.values[static_cast<std::size_t>(i)] =
          grad_norm(point_value(groups, n_hi, f, grid.point(static_cast<std::size_t>(i)), true));
    return out;
  }
  const long nr = static_cast<long>(grid.rings().size());
#pragma omp parallel
  {
    RingSynth rs(groups, n_hi, true);
    std::vector<cplx> dt, dp;
#pragma omp for schedule(dynamic, 1)
    for (long r = 0; r < nr; ++r) {
      const Ring& ring = grid.rings()[static_cast<std::size_t>(r)];
      rs.compute(map.sigma * ring.cos_theta, ring.sin_theta);
      dt.resize(static_cast<std::size_t>(ring.n_phi));
      dp.resize(static_cast<std::size_t>(ring.n_phi));
      fourier_ring(rs.orders(), rs.d(), false, map.sigma, map.beta, ring, dt.data());
      fourier_ring(rs.orders(), rs.c(), true, map.sigma, map.beta, ring, dp.data());
      const double s2 = ring.sin_theta * ring.sin_theta;
      double* o = out.values.data() + grid.ring_offset(static_cast<std::size_t>(r));
      for (int j = 0; j < ring.n_phi; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        o[j] = s2 > 0.0 ? std::sqrt(std::norm(dt[ju]) + std::norm(dp[ju]) / s2) : std::abs(dt[ju]);
      }
    }
  }
  return out;
}

double gradient_norm_at(const SpectralFunction& f, const Point3& x) {
  return grad_norm(point_value(order_groups(f), f.basis.max_degree(), f, x, true));
}

}  // namespace lslab
