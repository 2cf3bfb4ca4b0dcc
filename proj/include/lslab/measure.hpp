#pragma once

#include <vector>

#include "lslab/geom.hpp"
#include "lslab/region.hpp"

namespace lslab {

struct Atom {
  Point3 point;
  double mass = 0.0;
};

/// scale * density(node) * weight(node) on one quadrature grid.
struct MeasureTerm {
  QuadratureGrid grid;
  std::vector<double> density;  // one entry per node; empty means 1 everywhere
  double scale = 1.0;

  double density_at(std::size_t node) const { return density.empty() ? 1.0 : density[node]; }
  /// True when density is constant on every ring (axisymmetric in the grid frame).
  bool ring_constant() const;
  double mass() const;
};

/// Nonnegative measure: weighted quadrature terms plus point atoms.
struct Measure {
  std::vector<MeasureTerm> terms;
  std::vector<Atom> atoms;

  static Measure lebesgue(const QuadratureGrid& grid);
  double total_mass() const;
  Measure& add(const Measure& other);
  Measure& add_atom(const Point3& p, double mass);
};

/// Pointwise indicator of a resolved region on the nodes of `grid`.
Measure region_indicator(const Region& region, const QuadratureGrid& grid);

/// Resolution for quadratures that must integrate |f|^p for f of degree <= `degree`.
struct QuadraturePolicy {
  int degree = 0;
  /// Largest azimuthal frequency spread to integrate exactly; negative means 2 * degree.
  int azimuthal_spread = -1;
  double p = 2.0;
  /// Extra refinement when |f|^p is not a polynomial (p not an even integer).
  double oversample = 2.0;
  /// Floor on n_theta for the pointwise fallback used by non-axisymmetric regions.
  int fallback_min_n_theta = 96;

  int n_theta() const;
  int n_phi() const;
};

/// Exactness-driven grid sizes for integrating |f|^p.
QuadratureGrid lp_grid(const QuadraturePolicy& policy, const Frame& frame = Frame::identity());

/// Quadrature of 1_region dV. Regions whose primitives share an axis become
/// exact band quadratures around it; anything else falls back to a pointwise
/// indicator on a full grid.
Measure region_measure(const Region& region, const QuadraturePolicy& policy);

/// A resolved measure model: sum of scale * 1_region dV plus atoms.
struct MeasureModel {
  struct Part {
    double scale = 1.0;
    Region region = Region::all();
  };
  std::vector<Part> parts;
  std::vector<Atom> atoms;

  std::string to_string() const;
};

Measure discretize(const MeasureModel& model, const QuadraturePolicy& policy);

/// Common axis of every part and atom (up to sign), if one exists.
std::optional<Point3> common_axis(const Measure& measure);

}  // namespace lslab
