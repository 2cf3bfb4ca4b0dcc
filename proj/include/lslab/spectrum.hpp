#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lslab/geom.hpp"
#include "lslab/measure.hpp"

namespace lslab {

using cplx = std::complex<double>;

struct MultiplierSpec;

/// sqrt(n(n+1)), the frequency of degree n.
inline double degree_frequency(int n) { return std::sqrt(static_cast<double>(n) * (n + 1)); }
/// Largest N with sqrt(N(N+1)) <= lambda.
int band_degree(double lambda);

/// Ordered (n, k) labels: n ascending, k from -n to n.
class BasisIndex {
 public:
  enum class Kind { Band, Eigenspace };

  static BasisIndex band(double lambda);
  static BasisIndex eigenspace(int n);

  Kind kind() const { return kind_; }
  /// Band limit, or sqrt(n(n+1)) for an eigenspace.
  double lambda() const { return lambda_; }
  int min_degree() const { return n_lo_; }
  int max_degree() const { return n_hi_; }
  std::size_t size() const;
  int degree(std::size_t i) const;
  int order(std::size_t i) const;
  /// Position of (n, k), or -1 if absent.
  long index_of(int n, int k) const;
  std::string to_string() const;

  friend bool operator==(const BasisIndex& a, const BasisIndex& b) {
    return a.kind_ == b.kind_ && a.n_lo_ == b.n_lo_ && a.n_hi_ == b.n_hi_;
  }

 private:
  Kind kind_ = Kind::Band;
  double lambda_ = 1.0;
  int n_lo_ = 0, n_hi_ = 0;
};

/// f(x) = sum_i coeffs[i] Y_i(frame^T x): a band-limited function whose
/// harmonics are taken in its own frame.
struct SpectralFunction {
  BasisIndex basis;
  std::vector<cplx> coeffs;
  Frame frame;

  double l2_norm() const;  // coefficient norm, equal to the L2(dV) norm
  /// min and max order carrying a nonzero coefficient.
  std::pair<int, int> order_range() const;
};

struct GridSamples {
  const QuadratureGrid* grid = nullptr;
  std::vector<cplx> values;
};

struct RealSamples {
  const QuadratureGrid* grid = nullptr;
  std::vector<double> values;
};

/// Y_i at a point given in the basis frame's coordinates.
std::vector<cplx> basis_values(const BasisIndex& basis, const Point3& local);

/// Ring synthesis (OpenMP over rings). Rings shared with the function's pole
/// (up to sign) take a fast path; other grids fall back to per-node evaluation.
GridSamples evaluate(const SpectralFunction& f, const QuadratureGrid& grid);
/// Straightforward per-node synthesis, serial. Reference for `evaluate`.
GridSamples evaluate_serial(const SpectralFunction& f, const QuadratureGrid& grid);
cplx evaluate_at(const SpectralFunction& f, const Point3& x);

/// |grad f| at every node, from analytic theta derivatives.
RealSamples gradient_norm_samples(const SpectralFunction& f, const QuadratureGrid& grid);
double gradient_norm_at(const SpectralFunction& f, const Point3& x);

/// (int |f|^p dmu)^{1/p}; p = infinity gives the max over charged nodes and atoms.
double lp_norm(const SpectralFunction& f, double p, const Measure& mu);
/// int |f|^p dmu.
double lp_integral(const SpectralFunction& f, double p, const Measure& mu);
/// Lebesgue L^p norm on a grid sized by QuadraturePolicy for f.
double lp_norm(const SpectralFunction& f, double p, double oversample = 2.0);
/// Lebesgue L^p norm of |grad f| on the same kind of grid.
double gradient_lp_norm(const SpectralFunction& f, double p, double oversample = 2.0);
/// Quadrature policy adapted to f (its degree and azimuthal spread).
QuadraturePolicy policy_for(const SpectralFunction& f, double p, double oversample = 2.0);

/// Z(x) = lambda_n^{-1/2} sum_k Y_{n,k}(x) conj(Y_{n,k}(xi)), stored as one zonal
/// coefficient in the frame with pole xi.
SpectralFunction zonal(int n, const Point3& xi);
/// Same function with coefficients in the world frame.
SpectralFunction zonal_world(int n, const Point3& xi);
/// Closed form lambda_n^{-1/2} (2n+1)/(4 pi) P_n(x.xi).
double zonal_closed_form(int n, const Point3& xi, const Point3& x);

/// Highest-weight harmonic along the great circle with normal gamma.axis,
/// |G| = c_n (sin theta)^n with ||G||_2 = 1.
SpectralFunction beam(int n, const GeodesicAxis& gamma);

/// f_{lambda,y} = psi(L / lambda^2)(., y).
SpectralFunction projector_testfn(double lambda, const Point3& y, const MultiplierSpec& psi);

/// Unit-norm function with i.i.d. complex Gaussian coefficients.
SpectralFunction random_function(const BasisIndex& basis, std::uint64_t seed);
SpectralFunction random_band_function(double lambda, std::uint64_t seed);

/// Coefficients scaled by e^{lambda_n t}; requires |t| <= 10 / lambda.
SpectralFunction harmonic_extension(const SpectralFunction& f, double t);

SpectralFunction operator+(const SpectralFunction& a, const SpectralFunction& b);
SpectralFunction operator*(cplx s, const SpectralFunction& f);
/// <f, g> in L2(dV); requires equal bases and frames.
cplx inner(const SpectralFunction& f, const SpectralFunction& g);

std::string to_json(const SpectralFunction& f);
SpectralFunction function_from_json(const std::string& text);
void save_function(const SpectralFunction& f, const std::string& path);
SpectralFunction load_function(const std::string& path);

/// split-mix 64 generator with Box-Muller normals.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  /// Pair of independent standard normals.
  std::pair<double, double> normal_pair();

 private:
  std::uint64_t state_;
};

}  // namespace lslab
