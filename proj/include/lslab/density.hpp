#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lslab/geom.hpp"
#include "lslab/measure.hpp"
#include "lslab/region.hpp"

namespace lslab {

enum class DensityCondition {
  RelDense,    // min mu(B(z, r/lambda)) / vol B
  RelSparse,   // max mu(B(z, r/lambda)) / vol B
  SymDense,    // min [mu(B(z)) + mu(B(-z))] / vol B
  TGCC,        // min mu(T_w(gamma)) / vol T, w = r lambda^{-1/2}
  TubeSparse,  // max mu(T_w(gamma)) / vol T, w = r lambda^{-1/2}
};

std::string to_string(DensityCondition c);
DensityCondition parse_condition(const std::string& name);

struct DensityReport {
  DensityCondition condition = DensityCondition::RelDense;
  double lambda = 1.0;
  double r = 1.0;       // radius multiplier (ball r/lambda, tube r lambda^{-1/2})
  double radius = 0.0;  // resolved ball radius or tube halfwidth
  double worst_ratio = 0.0;
  Point3 witness;       // ball center, or tube axis for the tube conditions
  std::size_t centers_tested = 0;
};

struct CenterPolicy {
  /// Lattice spacing as a fraction of the ball radius / tube halfwidth.
  double spacing_factor = 0.25;
  /// Refuse to run (rather than report an unreliable extremum) past this many centers.
  std::size_t max_centers = 400000;
  /// Restrict the lattice to a cap (center, radius) instead of the whole sphere.
  std::optional<std::pair<Point3, double>> patch;
  std::vector<Point3> extra_centers;
  /// Applied to the lattice, so a rotated target can be tested with rotated centers.
  Frame rotation;
  /// Local quadrature inside each ball or tube: panels in the radial angle x Gauss nodes per panel.
  int panels = 16;
  int panel_nodes = 8;
  /// Azimuthal samples per ring for targets without a common axis.
  int ring_phi = 256;
};

/// mu(band of colatitudes [rho_a, rho_b] around `pole`) for a measure model.
double band_mass(const MeasureModel& target, const Point3& pole, double rho_a, double rho_b,
                 const CenterPolicy& policy = {});

DensityReport density_report(const MeasureModel& target, DensityCondition condition, double lambda,
                             double r, const CenterPolicy& policy = {});
DensityReport density_report(const Region& target, DensityCondition condition, double lambda,
                             double r, const CenterPolicy& policy = {});

}  // namespace lslab
