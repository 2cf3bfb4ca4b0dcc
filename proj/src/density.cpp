#include "lslab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lslab/specfun.hpp"

namespace lslab {

std::string to_string(DensityCondition c) {
  switch (c) {
    case DensityCondition::RelDense: return "dense";
    case DensityCondition::RelSparse: return "sparse";
    case DensityCondition::SymDense: return "symdense";
    case DensityCondition::TGCC: return "tgcc";
    case DensityCondition::TubeSparse: return "tubesparse";
  }
  return "?";
}

DensityCondition parse_condition(const std::string& name) {
  if (name == "dense") return DensityCondition::RelDense;
  if (name == "sparse") return DensityCondition::RelSparse;
  if (name == "symdense") return DensityCondition::SymDense;
  if (name == "tgcc") return DensityCondition::TGCC;
  if (name == "tubesparse") return DensityCondition::TubeSparse;
  throw std::invalid_argument("unknown density condition '" + name + "'");
}

namespace {

struct ResolvedPart {
  double scale;
  Region region;
  std::optional<AxialForm> form;
  // t = x.axis intervals [cos th2, cos th1] of the axial form
  std::vector<std::pair<double, double>> t_intervals;
};

std::vector<ResolvedPart> resolve_parts(const MeasureModel& model, double lambda) {
  std::vector<ResolvedPart> out;
  for (const auto& p : model.parts) {
    if (p.scale < 0.0) throw std::invalid_argument("measure scale must be nonnegative");
    ResolvedPart rp{p.scale, p.region.resolve(lambda), std::nullopt, {}};
    rp.form = axial_form(rp.region);
    if (rp.form)
      for (auto [a, b] : rp.form->intervals) rp.t_intervals.emplace_back(std::cos(b), std::cos(a));
    out.push_back(std::move(rp));
  }
  return out;
}

// Fraction of the ring {cos rho p + sin rho (cos f u + sin f v)} whose dot with
// `axis` lies in one of the t-intervals.
double ring_fraction(double A, double B, const std::vector<std::pair<double, double>>& t_iv) {
  double frac = 0.0;
  for (auto [lo, hi] : t_iv) {
    if (B < 1e-15) {
      if (A >= lo - 1e-15 && A <= hi + 1e-15) frac += 1.0;
      continue;
    }
    const double cl = std::clamp((lo - A) / B, -1.0, 1.0);
    const double ch = std::clamp((hi - A) / B, -1.0, 1.0);
    frac += (std::acos(cl) - std::acos(ch)) / kPi;
  }
  return std::min(frac, 1.0);
}

template <class F>
double band_integral(double rho_a, double rho_b, const CenterPolicy& pol, F&& ring_value,
                     std::vector<double> breaks = {}) {
  // panels between breakpoints, Gauss in a smoothed radial variable within each panel
  const GaussLegendreRule g = gauss_legendre_nodes(pol.panel_nodes);
  breaks.push_back(rho_a);
  breaks.push_back(rho_b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = std::max(breaks[k], rho_a), hi = std::min(breaks[k + 1], rho_b);
    if (!(hi > lo)) continue;
    // rho = lo + (hi - lo) (3 s^2 - 2 s^3) flattens the square-root edges
    const double w = hi - lo, h = 1.0 / pol.panels;
    for (int i = 0; i < pol.panels; ++i) {
      const double s0 = i * h;
      for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const double sv = s0 + 0.5 * h * (g.nodes[j] + 1.0);
        const double rho = lo + w * sv * sv * (3.0 - 2.0 * sv);
        const double jac = w * 6.0 * sv * (1.0 - sv) * std::sin(rho);
        total += 0.5 * h * g.weights[j] * jac * ring_value(std::cos(rho), std::sin(rho));
      }
    }
  }
  return total;  // integral over t of the per-ring value (caller multiplies by 2 pi)
}

// Radii where a ring around the center touches an interval edge; the ring
// fraction has square-root kinks there.
std::vector<double> ring_breaks(double d, const std::vector<std::pair<double, double>>& intervals) {
  std::vector<double> out;
  for (auto [a, b] : intervals)
    for (double c : {a, b})
      for (double rho : {std::abs(d - c), d + c, 2.0 * kPi - d - c})
        if (rho > 0.0 && rho < kPi) out.push_back(rho);
  return out;
}

double part_band_mass(const ResolvedPart& part, const Point3& pole, double rho_a, double rho_b,
                      const CenterPolicy& pol) {
  if (part.scale == 0.0) return 0.0;
  const double full = 2.0 * kPi * (std::cos(rho_a) - std::cos(rho_b));
  if (part.form && !part.form->axis) return part.form->intervals.empty() ? 0.0 : part.scale * full;
  if (part.form) {
    const Point3& a = *part.form->axis;
    const double pa = dot(pole, a);
    const double perp = std::sqrt(std::max(0.0, 1.0 - pa * pa));
    const double d = std::atan2(perp, pa);
    const double v = band_integral(
        rho_a, rho_b, pol, [&](double t, double s) { return ring_fraction(t * pa, s * perp, part.t_intervals); },
        ring_breaks(d, part.form->intervals));
    return part.scale * 2.0 * kPi * v;
  }
  const Frame f = Frame::with_pole(pole);
  const int n = pol.ring_phi;
  const double v = band_integral(rho_a, rho_b, pol, [&](double t, double s) {
    int inside = 0;
    for (int j = 0; j < n; ++j) {
      const double ph = 2.0 * kPi * (j + 0.5) / n;
      if (part.region.contains(f.to_world({s * std::cos(ph), s * std::sin(ph), t}))) ++inside;
    }
    return static_cast<double>(inside) / n;
  });
  return part.scale * 2.0 * kPi * v;
}

double atom_band_mass(const std::vector<Atom>& atoms, const Point3& pole, double rho_a, double rho_b) {
  double m = 0.0;
  for (const auto& at : atoms) {
    const double d = geodesic_distance(pole, at.point);
    if (d >= rho_a - 1e-15 && d <= rho_b + 1e-15) m += at.mass;
  }
  return m;
}

double model_band_mass(const std::vector<ResolvedPart>& parts, const std::vector<Atom>& atoms,
                       const Point3& pole, double rho_a, double rho_b, const CenterPolicy& pol) {
  double m = atom_band_mass(atoms, pole, rho_a, rho_b);
  for (const auto& p : parts) m += part_band_mass(p, pole, rho_a, rho_b, pol);
  return m;
}

// Common axis of every non-trivial part and atom, if any.
// Returns {has_common, axis_or_nullopt_if_isotropic}.
std::pair<bool, std::optional<Point3>> target_axis(const std::vector<ResolvedPart>& parts,
                                                  const std::vector<Atom>& atoms) {
  std::optional<Point3> axis;
  auto accept = [&](const Point3& p) {
    if (!axis) {
      axis = p.normalized();
      return true;
    }
    return std::abs(dot(*axis, p.normalized())) > 1.0 - 1e-12;
  };
  for (const auto& p : parts) {
    if (!p.form) return {false, std::nullopt};
    if (p.form->axis && !accept(*p.form->axis)) return {false, std::nullopt};
  }
  for (const auto& a : atoms)
    if (!accept(a.point)) return {false, std::nullopt};
  return {true, axis};
}

bool is_tube(DensityCondition c) {
  return c == DensityCondition::TGCC || c == DensityCondition::TubeSparse;
}
bool is_min(DensityCondition c) {
  return c == DensityCondition::RelDense || c == DensityCondition::SymDense ||
         c == DensityCondition::TGCC;
}

std::vector<Point3> lattice(std::size_t count, double radius, const Frame& frame) {
  return fibonacci_cap(count, radius, frame);
}

void check_count(double n, std::size_t max_centers) {
  if (n > static_cast<double>(max_centers))
    throw std::runtime_error("center sampling would be coarser than the ball radius (needs " +
                             std::to_string(static_cast<long long>(n)) + " centers, limit " +
                             std::to_string(max_centers) + ")");
}

std::size_t lattice_count(double area, double spacing, std::size_t max_centers) {
  const double n = std::ceil(area / (spacing * spacing));
  check_count(n, max_centers);
  return static_cast<std::size_t>(std::max(1.0, n));
}

}  // namespace

double band_mass(const MeasureModel& target, const Point3& pole, double rho_a, double rho_b,
                 const CenterPolicy& policy) {
  const auto parts = resolve_parts(target, 1.0);
  return model_band_mass(parts, target.atoms, pole.normalized(), rho_a, rho_b, policy);
}

DensityReport density_report(const MeasureModel& target, DensityCondition condition, double lambda,
                             double r, const CenterPolicy& policy) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("density_report: lambda must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("density_report: r must be > 0");
  const auto parts = resolve_parts(target, lambda);
  const bool tube = is_tube(condition);
  const double radius = tube ? r / std::sqrt(lambda) : r / lambda;
  if (tube && radius >= kPi / 2) throw std::invalid_argument("tube halfwidth must be < pi/2");
  if (!tube && radius > kPi) throw std::invalid_argument("ball radius must be <= pi");
  const double spacing = policy.spacing_factor * radius;

  std::vector<Point3> centers;
  const auto [axial, axis] = target_axis(parts, target.atoms);
  if (axial && !policy.patch) {
    // Rotations about the axis leave the target fixed, so one meridian of
    // centers (or tube axes) covers every configuration.
    if (!axis) {
      centers.push_back(policy.rotation.to_world(kNorthPole));
    } else {
      const Frame f = Frame::with_pole(*axis);
      const double span = tube ? kPi / 2 : kPi;
      const std::size_t n = static_cast<std::size_t>(std::ceil(span / spacing)) + 1;
      check_count(static_cast<double>(n), policy.max_centers);
      for (std::size_t i = 0; i < n; ++i) {
        const double th = span * static_cast<double>(i) / static_cast<double>(n - 1);
        centers.push_back(f.to_world({std::sin(th), 0.0, std::cos(th)}));
      }
    }
  } else if (policy.patch) {
    const auto& [c, rad] = *policy.patch;
    const std::size_t n = lattice_count(ball_volume(rad), spacing, policy.max_centers);
    centers = lattice(n, rad, policy.rotation * Frame::with_pole(c));
  } else {
    const double area = tube ? 2.0 * kPi : kFourPi;
    const std::size_t n = lattice_count(area, spacing, policy.max_centers);
    centers = lattice(n, tube ? kPi / 2 : kPi, policy.rotation);
  }
  for (const auto& c : policy.extra_centers) centers.push_back(c.normalized());
  if (!tube)
    for (const auto& a : target.atoms) centers.push_back(a.point);

  const double vol = tube ? tube_volume(radius) : ball_volume(radius);
  std::vector<double> ratio(centers.size());
  const long nc = static_cast<long>(centers.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < nc; ++i) {
    const Point3& z = centers[static_cast<std::size_t>(i)];
    double m;
    if (tube) {
      m = model_band_mass(parts, target.atoms, z, kPi / 2 - radius, kPi / 2 + radius, policy);
    } else {
      m = model_band_mass(parts, target.atoms, z, 0.0, radius, policy);
      if (condition == DensityCondition::SymDense)
        m += model_band_mass(parts, target.atoms, -z, 0.0, radius, policy);
    }
    ratio[static_cast<std::size_t>(i)] = m / vol;
  }

  DensityReport rep;
  rep.condition = condition;
  rep.lambda = lambda;
  rep.r = r;
  rep.radius = radius;
  rep.centers_tested = centers.size();
  const bool want_min = is_min(condition);
  std::size_t best = 0;
  for (std::size_t i = 1; i < ratio.size(); ++i)
    if (want_min ? ratio[i] < ratio[best] : ratio[i] > ratio[best]) best = i;
  rep.worst_ratio = std::max(0.0, ratio[best]);
  rep.witness = centers[best];
  return rep;
}

DensityReport density_report(const Region& target, DensityCondition condition, double lambda,
                             double r, const CenterPolicy& policy) {
  MeasureModel m;
  m.parts.push_back({1.0, target});
  return density_report(m, condition, lambda, r, policy);
}

}  // namespace lslab
