#include "lslab/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lslab {

namespace {

constexpr double kRescaleUp = 1e200;
constexpr double kRescaleDown = 1e-200;
const double kLogRescale = std::log(1e200);

// Partial sums 1/2 sum_{i<=k} log((2i-1)/(2i)) for k <= kMaxDegree + 1.
const std::vector<double>& sectoral_partial_sums() {
  static const std::vector<double> table = [] {
    std::vector<double> s(kMaxDegree + 2, 0.0);
    for (int i = 1; i < static_cast<int>(s.size()); ++i)
      s[i] = s[i - 1] + 0.5 * std::log((2.0 * i - 1.0) / (2.0 * i));
    return s;
  }();
  return table;
}

void check_degree(int n, int k) {
  if (n < 0 || n > kMaxDegree)
    throw std::out_of_range("degree " + std::to_string(n) + " outside [0, " +
                            std::to_string(kMaxDegree) + "]");
  if (k < 0 || k > n)
    throw std::out_of_range("order " + std::to_string(k) + " outside [0, n]");
}

}  // namespace

double legendre_P(int n, double t) {
  if (n < 0) throw std::domain_error("legendre_P: negative degree");
  if (std::abs(t) > 1.0 + 1e-12) throw std::domain_error("legendre_P: |t| > 1");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0) * t * cur - m * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_P_deriv(int n, double t) {
  if (n < 0) throw std::domain_error("legendre_P_deriv: negative degree");
  if (std::abs(t) > 1.0 + 1e-12) throw std::domain_error("legendre_P_deriv: |t| > 1");
  if (n == 0) return 0.0;
  if (std::abs(t) >= 1.0 - 1e-15) {
    const double end = 0.5 * n * (n + 1.0);
    return (t > 0 || n % 2 == 1) ? end : -end;
  }
  // Recurrence on the derivative directly: P'_{m+1} = P'_{m-1} + (2m+1) P_m.
  double p_prev = 1.0, p_cur = t;
  double d_prev = 0.0, d_cur = 1.0;
  for (int m = 1; m < n; ++m) {
    const double p_next = ((2.0 * m + 1.0) * t * p_cur - m * p_prev) / (m + 1.0);
    const double d_next = d_prev + (2.0 * m + 1.0) * p_cur;
    p_prev = p_cur;
    p_cur = p_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return d_cur;
}

double log_sectoral_constant(int k) {
  if (k < 0 || k > kMaxDegree + 1) throw std::out_of_range("log_sectoral_constant: order");
  return 0.5 * std::log((2.0 * k + 1.0) / kFourPi) + sectoral_partial_sums()[k];
}

void assoc_legendre_column(int k, int n_max, double cos_t, double sin_t, std::span<double> out) {
  check_degree(n_max, k);
  const std::size_t len = static_cast<std::size_t>(n_max - k + 1);
  if (out.size() < len) throw std::invalid_argument("assoc_legendre_column: output too short");

  sin_t = std::abs(sin_t);
  if (k > 0 && sin_t == 0.0) {
    for (std::size_t i = 0; i < len; ++i) out[i] = 0.0;
    return;
  }
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const double log_start = log_sectoral_constant(k) + (k > 0 ? k * std::log(sin_t) : 0.0);

  // value = mantissa * exp(log_scale)
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 0.0;
  double factor = 1.0;
  if (log_start > -600.0) {
    cur = sign * std::exp(log_start);
  } else {
    cur = sign;
    log_scale = log_start;
    factor = std::exp(log_scale);
  }
  out[0] = cur * factor;

  const double kk = static_cast<double>(k) * k;
  for (int n = k + 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n) * n;
    const double a = std::sqrt((4.0 * nn - 1.0) / (nn - kk));
    double next = a * cos_t * cur;
    if (n >= k + 2) {
      const double m = n - 1.0;
      const double b = std::sqrt((2.0 * n + 1.0) * (m * m - kk) / ((2.0 * n - 3.0) * (nn - kk)));
      next -= b * prev;
    }
    prev = cur;
    cur = next;
    if (log_scale < 0.0 && std::abs(cur) > kRescaleUp) {
      cur *= kRescaleDown;
      prev *= kRescaleDown;
      log_scale += kLogRescale;
      if (log_scale > -kLogRescale * 0.5) {
        // Back in range: fold the scale into the mantissas.
        const double f = std::exp(log_scale);
        cur *= f;
        prev *= f;
        log_scale = 0.0;
      }
      factor = std::exp(log_scale);
    }
    out[static_cast<std::size_t>(n - k)] = cur * factor;
  }
}

double assoc_legendre_norm(int n, int k, double theta) {
  check_degree(n, k);
  std::vector<double> col(static_cast<std::size_t>(n - k + 1));
  assoc_legendre_column(k, n, std::cos(theta), std::sin(theta), col);
  return col.back();
}

double dtheta_assoc_legendre(int n, int k, double theta) {
  check_degree(n, k);
  if (n == 0) return 0.0;
  const double c = std::cos(theta), s = std::sin(theta);
  auto value = [&](int order) {
    std::vector<double> col(static_cast<std::size_t>(n - order + 1));
    assoc_legendre_column(order, n, c, s, col);
    return col.back();
  };
  const double up = (k + 1 <= n) ? std::sqrt((n - k) * (n + k + 1.0)) * value(k + 1) : 0.0;
  const double down_val = (k >= 1) ? value(k - 1) : -value(1);
  const double down = std::sqrt((n + k) * (n - k + 1.0)) * down_val;
  return 0.5 * (up - down);
}

AssocLegendreTable::AssocLegendreTable(int n_max, double cos_t, double sin_t, bool with_derivative)
    : n_max_(n_max) {
  check_degree(n_max, 0);
  values_.assign(index(n_max, n_max) + 1, 0.0);
  std::vector<double> col(static_cast<std::size_t>(n_max + 1));
  for (int k = 0; k <= n_max; ++k) {
    assoc_legendre_column(k, n_max, cos_t, sin_t, col);
    for (int n = k; n <= n_max; ++n) values_[index(n, k)] = col[static_cast<std::size_t>(n - k)];
  }
  if (!with_derivative) return;
  derivs_.assign(values_.size(), 0.0);
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double up = (k + 1 <= n) ? std::sqrt((n - k) * (n + k + 1.0)) * value(n, k + 1) : 0.0;
      const double down_val = (k >= 1) ? value(n, k - 1) : -value(n, 1);
      derivs_[index(n, k)] = 0.5 * (up - std::sqrt((n + k) * (n - k + 1.0)) * down_val);
    }
  }
}

double AssocLegendreTable::value_signed(int n, int k) const {
  if (k >= 0) return value(n, k);
  return (k % 2 == 0 ? 1.0 : -1.0) * value(n, -k);
}

double AssocLegendreTable::dtheta_signed(int n, int k) const {
  if (k >= 0) return dtheta(n, k);
  return (k % 2 == 0 ? 1.0 : -1.0) * dtheta(n, -k);
}

namespace {

GaussLegendreRule compute_gauss_legendre(int q) {
  GaussLegendreRule rule;
  rule.nodes.assign(static_cast<std::size_t>(q), 0.0);
  rule.weights.assign(static_cast<std::size_t>(q), 0.0);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double deriv = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 1; m < q; ++m) {
        const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
      }
      const double pq = (q == 1) ? x : p1;
      const double pq_1 = (q == 1) ? 1.0 : p0;
      deriv = q * (x * pq - pq_1) / (x * x - 1.0);
      const double dx = pq / deriv;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        // one more derivative evaluation at the refined node
        double r0 = 1.0, r1 = x;
        for (int m = 1; m < q; ++m) {
          const double r2 = ((2.0 * m + 1.0) * x * r1 - m * r0) / (m + 1.0);
          r0 = r1;
          r1 = r2;
        }
        deriv = (q == 1) ? 1.0 : q * (x * r1 - r0) / (x * x - 1.0);
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("gauss_legendre_nodes: Newton did not converge for q=" +
                               std::to_string(q));
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    const std::size_t hi = static_cast<std::size_t>(q - 1 - i);
    const std::size_t lo = static_cast<std::size_t>(i);
    rule.nodes[hi] = x;
    rule.nodes[lo] = -x;
    rule.weights[hi] = w;
    rule.weights[lo] = w;
  }
  if (q % 2 == 1) rule.nodes[static_cast<std::size_t>(q / 2)] = 0.0;
  return rule;
}

}  // namespace

GaussLegendreRule gauss_legendre_nodes(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre_nodes: q must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  GaussLegendreRule rule = compute_gauss_legendre(q);
  std::lock_guard lock(mutex);
  return cache.emplace(q, std::move(rule)).first->second;
}

GaussLegendreRule gauss_legendre_nodes(int q, double a, double b) {
  GaussLegendreRule rule = gauss_legendre_nodes(q);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= std::abs(half);
  }
  return rule;
}

double log_wallis_l2n(int n) {
  if (n < 0) throw std::invalid_argument("wallis_l2n: negative n");
  double s = std::log(kFourPi);
  for (int j = 1; j <= n; ++j) s += std::log(2.0 * j) - std::log(2.0 * j + 1.0);
  return s;
}

double wallis_l2n(int n) { return std::exp(log_wallis_l2n(n)); }

}  // namespace lslab
