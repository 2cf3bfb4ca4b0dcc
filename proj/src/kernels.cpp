#include "lslab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lslab/slope.hpp"
#include "lslab/specfun.hpp"
#include "lslab/spectrum.hpp"

namespace lslab {

using cd = std::complex<double>;

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double psi_plateau(double s, double inner, double outer) {
  if (!(inner > 0.0 && inner < outer)) throw std::invalid_argument("psi_plateau: need 0 < inner < outer");
  const double a = std::abs(s);
  if (a <= inner) return 1.0;
  if (a >= outer) return 0.0;
  return smooth_step((outer - a) / (outer - inner));
}

MultiplierSpec MultiplierSpec::plateau(double inner, double outer) {
  if (!(inner > 0.0 && inner < outer)) throw std::invalid_argument("plateau: need 0 < inner < outer");
  return {Shape::PlateauBump, inner, outer};
}

MultiplierSpec MultiplierSpec::hard_cutoff(double edge) {
  if (!(edge > 0.0)) throw std::invalid_argument("hard cutoff edge must be > 0");
  return {Shape::HardCutoff, edge, edge};
}

double MultiplierSpec::operator()(double s) const {
  if (shape == Shape::HardCutoff) return std::abs(s) <= outer ? 1.0 : 0.0;
  return psi_plateau(s, inner, outer);
}

int heat_truncation(cd time) {
  if (time.real() < 1e-6) throw std::domain_error("heat kernel: Re t < 1e-6 needs too many terms");
  return static_cast<int>(std::ceil(std::sqrt(40.0 / time.real()))) + 8;
}

cd heat_series(cd time, double u, int n_trunc, double b, double* abs_sum) {
  u = std::clamp(u, -1.0, 1.0);
  double pm1 = 0.0, p = 1.0;
  cd sum = 0.0;
  double asum = 0.0;
  for (int n = 0; n <= n_trunc; ++n) {
    if (n >= 1) {
      const double next = ((2.0 * n - 1.0) * u * p - (n - 1.0) * pm1) / n;
      pm1 = p;
      p = next;
    }
    const cd term = std::exp(-(n * (n + 1.0) + b) * time) * ((2.0 * n + 1.0) / kFourPi * p);
    sum += term;
    asum += std::abs(term);
  }
  if (abs_sum) *abs_sum = asum;
  return sum;
}

cd heat_kernel(const HeatQuery& q, const OperatorShift& shift) {
  if (!(q.time.real() > 0.0)) throw std::domain_error("heat kernel needs Re t > 0");
  if (shift.b < 0.0) throw std::invalid_argument("operator shift must be >= 0");
  const int n = q.n_trunc > 0 ? q.n_trunc : heat_truncation(q.time);
  return heat_series(q.time, dot(q.x, q.y), n, shift.b);
}

namespace {

// sum c_n P_n'(u) and the matching sum of |terms|
double heat_grad_series(double t, double u, int n_trunc, double b, double* abs_sum) {
  u = std::clamp(u, -1.0, 1.0);
  // P'_{n+1} = P'_{n-1} + (2n+1) P_n
  double pm1 = 1.0, p = u;      // P_0, P_1
  double dm1 = 0.0, d = 1.0;    // P_0', P_1'
  double sum = 0.0, asum = 0.0;
  for (int n = 1; n <= n_trunc; ++n) {
    const double term = std::exp(-(n * (n + 1.0) + b) * t) * (2.0 * n + 1.0) / kFourPi * d;
    sum += term;
    asum += std::abs(term);
    const double pn1 = ((2.0 * n + 1.0) * u * p - n * pm1) / (n + 1.0);
    const double dn1 = dm1 + (2.0 * n + 1.0) * p;
    pm1 = p;
    p = pn1;
    dm1 = d;
    d = dn1;
  }
  if (abs_sum) *abs_sum = asum;
  return sum;
}

constexpr double kFloor = 1e-12;

}  // namespace

double heat_gradient_norm(double t, const Point3& x, const Point3& y, const OperatorShift& shift) {
  const double u = std::clamp(dot(x, y), -1.0, 1.0);
  const double s = cross(x, y).norm();
  return std::abs(heat_grad_series(t, u, heat_truncation(t), shift.b, nullptr)) * s;
}

std::vector<double> pair_distances(const QuadratureGrid& grid) {
  std::vector<Point3> pts(grid.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = grid.point(i);
  std::vector<double> d;
  d.reserve(pts.size() * (pts.size() + 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) d.push_back(geodesic_distance(pts[i], pts[j]));
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  for (double v : d)
    if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
  return out;
}

std::vector<ProfileRow> gaussian_bound_profile(const std::vector<double>& t_list,
                                               const std::vector<double>& distances) {
  return complex_bound_profile({0.0}, t_list, distances);
}

std::vector<ProfileRow> complex_bound_profile(const std::vector<double>& angle_list,
                                              const std::vector<double>& t_list,
                                              const std::vector<double>& distances) {
  std::vector<ProfileRow> rows;
  for (double ang : angle_list) {
    if (std::abs(ang) > 1.3) throw std::invalid_argument("complex time angle must satisfy |angle| <= 1.3");
    for (double t : t_list) {
      if (!(t > 0.0)) throw std::invalid_argument("profile times must be > 0");
      const cd z = std::polar(t, ang);
      const int n = heat_truncation(z);
      const long m = static_cast<long>(distances.size());
      std::vector<double> prof(distances.size(), -1.0);
#pragma omp parallel for schedule(static)
      for (long i = 0; i < m; ++i) {
        const double dist = distances[static_cast<std::size_t>(i)];
        double asum = 0.0;
        const cd p = heat_series(z, std::cos(dist), n, 0.0, &asum);
        if (std::abs(p) < kFloor * asum) continue;
        prof[static_cast<std::size_t>(i)] =
            std::abs(p) * z.real() * std::exp(dist * dist * std::cos(ang) / (5.0 * t));
      }
      ProfileRow row{t, ang, 0.0, 0.0};
      for (std::size_t i = 0; i < prof.size(); ++i)
        if (prof[i] > row.sup_profile) {
          row.sup_profile = prof[i];
          row.argmax_distance = distances[i];
        }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ProfileRow> heat_gradient_profile(const std::vector<double>& t_list,
                                              const std::vector<double>& distances) {
  std::vector<ProfileRow> rows;
  for (double t : t_list) {
    const int n = heat_truncation(t);
    ProfileRow row{t, 0.0, 0.0, 0.0};
    for (double dist : distances) {
      if (dist <= 0.0 || dist >= kPi) continue;  // gradient vanishes at d = 0 and d = pi
      double asum = 0.0;
      const double g = heat_grad_series(t, std::cos(dist), n, 0.0, &asum);
      if (std::abs(g) < kFloor * asum) continue;
      const double v = std::abs(g) * std::sin(dist) * std::pow(t, 1.5) * std::exp(dist * dist / (5.0 * t));
      if (v > row.sup_profile) {
        row.sup_profile = v;
        row.argmax_distance = dist;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

int multiplier_degree(const MultiplierSpec& psi, double lambda, const OperatorShift& shift) {
  const double lim = psi.support() * lambda * lambda - shift.b;
  if (lim < 0.0) return -1;
  int n = static_cast<int>(std::floor((std::sqrt(1.0 + 4.0 * lim) - 1.0) / 2.0));
  while (n > 0 && n * (n + 1.0) > lim) --n;
  while ((n + 1.0) * (n + 2.0) <= lim) ++n;
  return n;
}

double multiplier_series(const MultiplierSpec& psi, double lambda, double u, const OperatorShift& shift) {
  const int N = multiplier_degree(psi, lambda, shift);
  u = std::clamp(u, -1.0, 1.0);
  double pm1 = 0.0, p = 1.0, sum = 0.0;
  const double l2 = lambda * lambda;
  for (int n = 0; n <= N; ++n) {
    if (n >= 1) {
      const double next = ((2.0 * n - 1.0) * u * p - (n - 1.0) * pm1) / n;
      pm1 = p;
      p = next;
    }
    sum += psi((n * (n + 1.0) + shift.b) / l2) * (2.0 * n + 1.0) / kFourPi * p;
  }
  return sum;
}

double multiplier_kernel(const MultiplierSpec& psi, double lambda, const Point3& x, const Point3& y,
                         const OperatorShift& shift) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("multiplier_kernel: lambda must be >= 1");
  return multiplier_series(psi, lambda, dot(x, y), shift);
}

ProfileRow multiplier_decay_profile(const MultiplierSpec& psi, double lambda, double order,
                                    const std::vector<double>& distances) {
  ProfileRow row{lambda, 0.0, 0.0, 0.0};
  const long m = static_cast<long>(distances.size());
  std::vector<double> v(distances.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) {
    const double d = distances[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(i)] =
        std::abs(multiplier_series(psi, lambda, std::cos(d))) * std::pow(1.0 + lambda * d, order) /
        (lambda * lambda);
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > row.sup_profile) {
      row.sup_profile = v[i];
      row.argmax_distance = distances[i];
    }
  return row;
}

DecayFit multiplier_decay_fit(const MultiplierSpec& psi, double lambda, int j_lo, int j_hi,
                              int samples_per_shell) {
  std::vector<std::pair<double, double>> pts;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double a = std::ldexp(1.0, j) / lambda, b = std::ldexp(1.0, j + 1) / lambda;
    if (b > kPi) break;
    double env = 0.0;
    for (int i = 0; i < samples_per_shell; ++i) {
      const double d = a + (b - a) * i / samples_per_shell;
      env = std::max(env, std::abs(multiplier_series(psi, lambda, std::cos(d))) / (lambda * lambda));
    }
    if (env < 1e-12) continue;
    pts.emplace_back(std::ldexp(1.0, j) * std::sqrt(2.0), env);
  }
  DecayFit fit;
  fit.n_points = static_cast<int>(pts.size());
  if (pts.size() < 3) return fit;
  const SlopeFit s = slope_fit(pts);
  fit.order = -s.slope;
  fit.r_squared = s.r_squared;
  return fit;
}

double spectral_function(double lambda, const Point3&) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("spectral_function: lambda must be >= 1");
  const double n1 = band_degree(lambda) + 1.0;
  return n1 * n1 / kFourPi;
}

}  // namespace lslab
