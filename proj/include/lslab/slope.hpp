#pragma once

#include <utility>
#include <vector>

namespace lslab {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

/// Ordinary least squares of log y on log x. Needs >= 3 points, all positive.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points);
SlopeFit slope_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lslab
