#include "lslab/slope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lslab {

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("slope_fit: need at least 3 points");
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("slope_fit: inputs must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("slope_fit: x values are all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // a flat y is fit perfectly
  fit.r_squared = (syy == 0.0) ? 1.0 : std::min(1.0, (sxy * sxy) / (sxx * syy));
  fit.n_points = static_cast<int>(points.size());
  return fit;
}

SlopeFit slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("slope_fit: length mismatch");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) pts.emplace_back(x[i], y[i]);
  return slope_fit(pts);
}

}  // namespace lslab
