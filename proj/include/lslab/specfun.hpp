#pragma once

#include <span>
#include <vector>

namespace lslab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPi = 4.0 * kPi;

/// Largest degree supported by the associated Legendre kernels.
inline constexpr int kMaxDegree = 4096;

/// Classical Legendre polynomial P_n(t) by the three-term recurrence.
/// Throws std::domain_error when |t| > 1 + 1e-12.
double legendre_P(int n, double t);

/// P_n'(t) for |t| < 1; the endpoint values n(n+1)/2 * (+-1)^(n+1) are used at t = +-1.
double legendre_P_deriv(int n, double t);

/// Fully normalized associated Legendre function with Condon-Shortley phase,
/// scaled so that N(cos th) e^{ik phi} is orthonormal on S^2.
double assoc_legendre_norm(int n, int k, double theta);

/// d/dtheta of assoc_legendre_norm, from the order-shift identity
///   dN_n^k = 1/2 [ sqrt((n-k)(n+k+1)) N_n^{k+1} - sqrt((n+k)(n-k+1)) N_n^{k-1} ].
double dtheta_assoc_legendre(int n, int k, double theta);

/// Fills out[i] = N_{k+i}^k(cos th) for i = 0..n_max-k (k >= 0).
///
/// Runs the degree recurrence from the sectoral value. The sectoral start
/// (sin th)^k underflows for large k near the poles; the recurrence then
/// carries a separate natural-log scale and rescales by 1e-200 whenever the
/// mantissa grows past 1e200, so values that are representable come out
/// exact and the rest flush to zero.
void assoc_legendre_column(int k, int n_max, double cos_t, double sin_t, std::span<double> out);

/// Table of N_n^k(cos th) for all 0 <= k <= n <= n_max at one colatitude,
/// optionally with theta derivatives.
class AssocLegendreTable {
 public:
  AssocLegendreTable(int n_max, double cos_t, double sin_t, bool with_derivative = false);

  int n_max() const { return n_max_; }
  double value(int n, int k) const { return values_[index(n, k)]; }
  /// Negative orders use N_n^{-k} = (-1)^k N_n^k.
  double value_signed(int n, int k) const;
  double dtheta(int n, int k) const { return derivs_[index(n, k)]; }
  double dtheta_signed(int n, int k) const;
  bool has_derivative() const { return !derivs_.empty(); }

 private:
  static std::size_t index(int n, int k) {
    return static_cast<std::size_t>(n) * (n + 1) / 2 + static_cast<std::size_t>(k);
  }
  int n_max_;
  std::vector<double> values_;
  std::vector<double> derivs_;
};

/// log |N_k^k| without the (sin th)^k factor: 1/2 log((2k+1)/4pi) + 1/2 sum log((2i-1)/(2i)).
double log_sectoral_constant(int k);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Roots of P_q by Newton iteration from Chebyshev guesses, on (-1, 1).
/// Nodes ascending. Throws std::runtime_error if Newton fails to converge.
GaussLegendreRule gauss_legendre_nodes(int q);

/// Rule mapped affinely onto [a, b].
GaussLegendreRule gauss_legendre_nodes(int q, double a, double b);

/// Integral over S^2 of (sin th)^{2n}, i.e. 4 pi prod_{j<=n} 2j/(2j+1).
double wallis_l2n(int n);
double log_wallis_l2n(int n);

}  // namespace lslab
