#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lslab/extremal.hpp"

namespace lslab {

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double HermitianMatrix::hermitian_defect() const {
  const double nrm = frobenius_norm();
  if (nrm == 0.0) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m / nrm;
}

bool HermitianMatrix::is_real() const {
  return std::all_of(a_.begin(), a_.end(), [](const cplx& v) { return v.imag() == 0.0; });
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = 1.0;
  return h;
}

EigenSystem jacobi_symmetric(std::vector<double> a, std::size_t n, bool want_vectors) {
  if (a.size() != n * n) throw std::invalid_argument("jacobi: size mismatch");
  std::vector<double> v;
  if (want_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  double total = 0.0;
  for (double x : a) total += x * x;
  const double tol = 1e-12 * std::sqrt(total);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };

  EigenSystem out;
  int sweep = 0;
  while (off_norm() > tol) {
    if (++sweep > 60) throw std::runtime_error("jacobi: no convergence after 60 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        // skip rotations that cannot change anything at this precision
        if (std::abs(apq) < 1e-300 ||
            (sweep > 3 && std::abs(apq) * 1e18 < std::abs(app) && std::abs(apq) * 1e18 < std::abs(aqq))) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
        if (want_vectors)
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p], vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
      }
    }
  }
  out.sweeps = sweep;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
  for (std::size_t i : idx) {
    out.values.push_back(a[i * n + i]);
    if (want_vectors) {
      std::vector<cplx> col(n);
      for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + i];
      out.vectors.push_back(std::move(col));
    }
  }
  return out;
}

EigenSystem hermitian_eigs(const HermitianMatrix& h, bool want_vectors) {
  const std::size_t n = h.dim();
  if (h.hermitian_defect() > 1e-12) throw std::invalid_argument("hermitian_eigs: matrix is not Hermitian");
  if (h.is_real()) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (h(i, j).real() + h(j, i).real());
    return jacobi_symmetric(std::move(a), n, want_vectors);
  }
  const std::size_t m = 2 * n;
  std::vector<double> s(m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx hij = 0.5 * (h(i, j) + std::conj(h(j, i)));
      s[i * m + j] = hij.real();
      s[(i + n) * m + (j + n)] = hij.real();
      s[i * m + (j + n)] = -hij.imag();
      s[(i + n) * m + j] = hij.imag();
    }
  EigenSystem big = jacobi_symmetric(std::move(s), m, want_vectors);
  EigenSystem out;
  out.sweeps = big.sweeps;
  const double scale = std::max(1.0, h.frobenius_norm());
  std::size_t i = 0;
  while (i < m) {
    // cluster of numerically equal eigenvalues; its size is even
    std::size_t j = i + 1;
    while (j < m && big.values[j] - big.values[j - 1] <= 1e-9 * scale) ++j;
    if ((j - i) % 2 != 0) throw std::runtime_error("hermitian_eigs: eigenvalue pairing failed");
    const std::size_t want = (j - i) / 2;
    std::vector<std::vector<cplx>> picked;
    if (want_vectors) {
      // [u; v] -> u + i v, then pivoted complex Gram-Schmidt drops the twin copies
      std::vector<std::vector<cplx>> cand;
      for (std::size_t c = i; c < j; ++c) {
        std::vector<cplx> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = cplx(big.vectors[c][k].real(), big.vectors[c][k + n].real());
        cand.push_back(std::move(x));
      }
      auto norm2 = [](const std::vector<cplx>& x) {
        double s2 = 0.0;
        for (const auto& z : x) s2 += std::norm(z);
        return s2;
      };
      while (picked.size() < want) {
        std::size_t best = 0;
        double best_n = -1.0;
        for (std::size_t c = 0; c < cand.size(); ++c)
          if (const double v = norm2(cand[c]); v > best_n) {
            best_n = v;
            best = c;
          }
        if (best_n < 1e-6) break;
        std::vector<cplx> y = std::move(cand[best]);
        cand.erase(cand.begin() + static_cast<long>(best));
        const double inv = 1.0 / std::sqrt(best_n);
        for (auto& z : y) z *= inv;
        for (auto& x : cand) {
          cplx d = 0.0;
          for (std::size_t k = 0; k < n; ++k) d += std::conj(y[k]) * x[k];
          for (std::size_t k = 0; k < n; ++k) x[k] -= d * y[k];
        }
        picked.push_back(std::move(y));
      }
      if (picked.size() < want) throw std::runtime_error("hermitian_eigs: eigenvector pairing failed");
    }
    for (std::size_t c = 0; c < want; ++c) {
      // average the pair members
      out.values.push_back(0.5 * (big.values[i + 2 * c] + big.values[i + 2 * c + 1]));
      if (want_vectors) out.vectors.push_back(std::move(picked[c]));
    }
    i = j;
  }
  if (out.values.size() != n) throw std::runtime_error("hermitian_eigs: eigenvalue pairing failed");
  return out;
}

}  // namespace lslab
