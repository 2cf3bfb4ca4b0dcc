#pragma once

#include <complex>
#include <vector>

#include "lslab/geom.hpp"

namespace lslab {

/// theta(u) = g(u) / (g(u) + g(1-u)), g(u) = exp(-1/u) for u > 0.
double smooth_step(double u);

/// 1 on [-inner, inner], 0 outside [-outer, outer], C-infinity in between.
double psi_plateau(double s, double inner, double outer);

struct MultiplierSpec {
  enum class Shape { PlateauBump, HardCutoff };
  Shape shape = Shape::PlateauBump;
  double inner = 0.5;  // plateau half-width (unused for HardCutoff)
  double outer = 1.0;  // support edge, or the cutoff edge

  static MultiplierSpec plateau(double inner, double outer);
  static MultiplierSpec hard_cutoff(double edge);

  double operator()(double s) const;
  /// psi vanishes for |s| > support().
  double support() const { return outer; }
};

struct OperatorShift {
  double b = 0.0;
};

struct HeatQuery {
  std::complex<double> time{1.0, 0.0};
  Point3 x, y;
  int n_trunc = -1;  // -1 picks the default truncation
};

/// ceil(sqrt(40 / Re t)) + 8, enough to push the dropped tail below 1e-14.
/// Throws std::domain_error when Re t < 1e-6.
int heat_truncation(std::complex<double> time);

/// sum_n e^{-(n(n+1)+b) t} (2n+1)/(4 pi) P_n(u), u = cos d.
/// `abs_sum`, if given, receives the sum of the absolute values of the terms.
std::complex<double> heat_series(std::complex<double> time, double u, int n_trunc, double b = 0.0,
                                 double* abs_sum = nullptr);

std::complex<double> heat_kernel(const HeatQuery& q, const OperatorShift& shift = {});

/// |grad_x p(t, x, y)| for real t, analytic.
double heat_gradient_norm(double t, const Point3& x, const Point3& y, const OperatorShift& shift = {});

struct ProfileRow {
  double t_or_lambda = 0.0;
  double theta_angle = 0.0;
  double sup_profile = 0.0;
  double argmax_distance = 0.0;
};

/// Distinct pairwise distances between nodes of `grid` (the heat and multiplier
/// kernels depend on (x, y) only through d(x, y)).
std::vector<double> pair_distances(const QuadratureGrid& grid);

/// sup over distances of p(t, d) t e^{d^2 / (5t)}. Pairs whose series value sits
/// below the round-off floor (1e-12 of the sum of |terms|) are skipped.
std::vector<ProfileRow> gaussian_bound_profile(const std::vector<double>& t_list,
                                               const std::vector<double>& distances);

/// sup |p(z, d)| Re z e^{Re(d^2 / (5z))} for z = t e^{i angle}. Requires |angle| <= 1.3.
std::vector<ProfileRow> complex_bound_profile(const std::vector<double>& angle_list,
                                              const std::vector<double>& t_list,
                                              const std::vector<double>& distances);

/// sup over distances of |grad_x p| t^{3/2} e^{d^2/(5t)}, same floor rule.
std::vector<ProfileRow> heat_gradient_profile(const std::vector<double>& t_list,
                                              const std::vector<double>& distances);

/// Highest degree with (n(n+1)+b)/lambda^2 inside the support of psi.
int multiplier_degree(const MultiplierSpec& psi, double lambda, const OperatorShift& shift = {});

/// sum_n psi((n(n+1)+b)/lambda^2) (2n+1)/(4 pi) P_n(u).
double multiplier_series(const MultiplierSpec& psi, double lambda, double u,
                         const OperatorShift& shift = {});
double multiplier_kernel(const MultiplierSpec& psi, double lambda, const Point3& x, const Point3& y,
                         const OperatorShift& shift = {});

/// sup over distances of |K| (1 + lambda d)^order / lambda^2.
ProfileRow multiplier_decay_profile(const MultiplierSpec& psi, double lambda, double order,
                                    const std::vector<double>& distances);

struct DecayFit {
  double order = 0.0;  // minus the log-log slope of the envelope
  double r_squared = 0.0;
  int n_points = 0;
};

/// Fits |K|/lambda^2 ~ (lambda d)^{-order}: envelope = max |K| over dyadic
/// shells lambda d in [2^j, 2^{j+1}), j from `j_lo` to `j_hi`, shells below
/// 1e-12 dropped. The default shells cover lambda d in [16, 256), past the
/// width of the multiplier's transition.
DecayFit multiplier_decay_fit(const MultiplierSpec& psi, double lambda, int j_lo = 4, int j_hi = 7,
                              int samples_per_shell = 1000);

/// (N+1)^2 / (4 pi), N = band_degree(lambda); x only enters through rotation invariance.
double spectral_function(double lambda, const Point3& x = kNorthPole);

}  // namespace lslab
