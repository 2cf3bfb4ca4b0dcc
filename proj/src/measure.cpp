#include "lslab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lslab/specfun.hpp"

namespace lslab {

bool MeasureTerm::ring_constant() const {
  if (density.empty()) return true;
  for (std::size_t r = 0; r < grid.rings().size(); ++r) {
    const std::size_t off = grid.ring_offset(r);
    for (int j = 1; j < grid.rings()[r].n_phi; ++j)
      if (density[off + static_cast<std::size_t>(j)] != density[off]) return false;
  }
  return true;
}

double MeasureTerm::mass() const {
  double s = 0.0;
  for (std::size_t r = 0; r < grid.rings().size(); ++r) {
    const Ring& ring = grid.rings()[r];
    const std::size_t off = grid.ring_offset(r);
    for (int j = 0; j < ring.n_phi; ++j) s += ring.weight * density_at(off + static_cast<std::size_t>(j));
  }
  return scale * s;
}

Measure Measure::lebesgue(const QuadratureGrid& grid) {
  Measure m;
  m.terms.push_back({grid, {}, 1.0});
  return m;
}

double Measure::total_mass() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.mass();
  for (const auto& a : atoms) s += a.mass;
  return s;
}

Measure& Measure::add(const Measure& other) {
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  atoms.insert(atoms.end(), other.atoms.begin(), other.atoms.end());
  return *this;
}

Measure& Measure::add_atom(const Point3& p, double mass) {
  if (mass < 0.0) throw std::invalid_argument("atom mass must be nonnegative");
  atoms.push_back({p.normalized(), mass});
  return *this;
}

Measure region_indicator(const Region& region, const QuadratureGrid& grid) {
  MeasureTerm term{grid, std::vector<double>(grid.size(), 0.0), 1.0};
  for (std::size_t r = 0; r < grid.rings().size(); ++r) {
    const std::size_t off = grid.ring_offset(r);
    for (int j = 0; j < grid.rings()[r].n_phi; ++j)
      term.density[off + static_cast<std::size_t>(j)] = region.contains(grid.point(r, j)) ? 1.0 : 0.0;
  }
  Measure m;
  m.terms.push_back(std::move(term));
  return m;
}

namespace {

double effective_power(double p) {
  // sup norms: sampling at twice the Nyquist rate of f
  if (!std::isfinite(p)) return 4.0;
  return std::max(p, 2.0);
}

double refinement(double p, double oversample) {
  const double P = effective_power(p);
  if (!std::isfinite(p)) return 1.0;
  const bool even = P == std::floor(P) && static_cast<long>(P) % 2 == 0;
  return even ? 1.0 : oversample;
}

}  // namespace

int QuadraturePolicy::n_theta() const {
  const double P = effective_power(p);
  const double q = refinement(p, oversample) * (P * degree / 2.0 + 1.0);
  return std::max(2, static_cast<int>(std::ceil(q - 1e-9)));
}

int QuadraturePolicy::n_phi() const {
  const double P = effective_power(p);
  const int spread = azimuthal_spread < 0 ? 2 * degree : azimuthal_spread;
  const double n = refinement(p, oversample) * (std::floor(P * spread / 2.0) + 1.0);
  return std::max(4, static_cast<int>(std::ceil(n - 1e-9)));
}

QuadratureGrid lp_grid(const QuadraturePolicy& policy, const Frame& frame) {
  return make_grid(policy.n_theta(), policy.n_phi(), frame);
}

Measure region_measure(const Region& region, const QuadraturePolicy& policy) {
  if (region.depends_on_lambda()) throw std::invalid_argument("region_measure: resolve the region first");
  const Region& resolved = region;
  Measure m;
  if (auto form = axial_form(resolved)) {
    const Frame frame = form->axis ? Frame::with_pole(*form->axis) : Frame::identity();
    for (auto [a, b] : form->intervals)
      m.terms.push_back({make_band_grid(a, b, policy.n_theta(), policy.n_phi(), frame), {}, 1.0});
    return m;
  }
  const int nt = std::max(policy.n_theta(), policy.fallback_min_n_theta);
  const int np = std::max(policy.n_phi(), 2 * policy.fallback_min_n_theta + 1);
  return region_indicator(resolved, make_grid(nt, np));
}

std::string MeasureModel::to_string() const {
  std::string s;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& p : parts) {
    if (!s.empty()) s += " + ";
    s += num(p.scale) + "*" + p.region.to_string();
  }
  for (const auto& a : atoms) {
    if (!s.empty()) s += " + ";
    const double ph = std::hypot(a.point.x, a.point.y) == 0.0 ? 0.0 : a.point.phi();
    s += "atom(" + num(a.point.theta()) + "," + num(ph) + "," + num(a.mass) + ")";
  }
  return s.empty() ? "zero" : s;
}

Measure discretize(const MeasureModel& model, const QuadraturePolicy& policy) {
  Measure m;
  for (const auto& part : model.parts) {
    if (part.scale < 0.0) throw std::invalid_argument("measure scale must be nonnegative");
    Measure piece = region_measure(part.region, policy);
    for (auto& t : piece.terms) t.scale *= part.scale;
    m.add(piece);
  }
  for (const auto& a : model.atoms) m.add_atom(a.point, a.mass);
  return m;
}

namespace {

bool is_isotropic(const MeasureTerm& t) {
  if (!t.density.empty() && !t.ring_constant()) return false;
  if (!t.density.empty()) {
    for (std::size_t r = 1; r < t.grid.rings().size(); ++r)
      if (t.density[t.grid.ring_offset(r)] != t.density[0]) return false;
  }
  return std::abs(t.grid.total_weight() - kFourPi) < 1e-9;
}

}  // namespace

std::optional<Point3> common_axis(const Measure& measure) {
  std::optional<Point3> axis;
  auto accept = [&](const Point3& p) {
    if (!axis) {
      axis = p;
      return true;
    }
    return std::abs(dot(*axis, p)) > 1.0 - 1e-12;
  };
  for (const auto& t : measure.terms) {
    if (is_isotropic(t)) continue;
    if (!t.ring_constant() || !accept(t.grid.frame().pole())) return std::nullopt;
  }
  for (const auto& a : measure.atoms)
    if (!accept(a.point)) return std::nullopt;
  return axis ? axis : std::optional<Point3>(kNorthPole);
}

}  // namespace lslab
