#include "lslab/geom.hpp"

#include <algorithm>
#include <stdexcept>

#include "lslab/specfun.hpp"

namespace lslab {

Frame Frame::with_pole(const Point3& pole) {
  const Point3 p = pole.normalized();
  const double th = p.theta();
  const double ph = (std::hypot(p.x, p.y) == 0.0) ? 0.0 : p.phi();
  const double ct = std::cos(th), st = std::sin(th), cp = std::cos(ph), sp = std::sin(ph);
  // Rz(ph) * Ry(th)
  return Frame({cp * ct, -sp, cp * st,  //
                sp * ct, cp, sp * st,   //
                -st, 0.0, ct});
}

Frame Frame::axis_angle(const Point3& axis, double angle) {
  const Point3 u = axis.normalized();
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  return Frame({t * u.x * u.x + c, t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y,
                t * u.x * u.y + s * u.z, t * u.y * u.y + c, t * u.y * u.z - s * u.x,
                t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c});
}

Point3 Frame::to_world(const Point3& v) const {
  return {m_[0] * v.x + m_[1] * v.y + m_[2] * v.z, m_[3] * v.x + m_[4] * v.y + m_[5] * v.z,
          m_[6] * v.x + m_[7] * v.y + m_[8] * v.z};
}

Point3 Frame::to_local(const Point3& v) const {
  return {m_[0] * v.x + m_[3] * v.y + m_[6] * v.z, m_[1] * v.x + m_[4] * v.y + m_[7] * v.z,
          m_[2] * v.x + m_[5] * v.y + m_[8] * v.z};
}

Frame Frame::transposed() const {
  return Frame({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]});
}

Frame operator*(const Frame& a, const Frame& b) {
  std::array<double, 9> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r[static_cast<std::size_t>(3 * i + j)] = s;
    }
  return Frame(r);
}

double geodesic_distance(const Point3& a, const Point3& b) {
  return std::atan2(cross(a, b).norm(), dot(a, b));
}

double tube_distance(const Point3& x, const GeodesicAxis& gamma) {
  // |pi/2 - arccos(x.axis)| = arcsin |x.axis|, computed via atan2 for accuracy near the pole.
  const double c = std::abs(dot(x, gamma.axis));
  const double s = cross(x, gamma.axis).norm();
  return std::atan2(c, s);
}

double ball_volume(double radius) { return 2.0 * kPi * (1.0 - std::cos(radius)); }
double tube_volume(double halfwidth) { return kFourPi * std::sin(halfwidth); }

QuadratureGrid::QuadratureGrid(Frame frame, std::vector<Ring> rings)
    : frame_(frame), rings_(std::move(rings)) {
  offsets_.reserve(rings_.size() + 1);
  offsets_.push_back(0);
  for (const Ring& r : rings_) offsets_.push_back(offsets_.back() + static_cast<std::size_t>(r.n_phi));
}

int QuadratureGrid::max_n_phi() const {
  int m = 0;
  for (const Ring& r : rings_) m = std::max(m, r.n_phi);
  return m;
}

Point3 QuadratureGrid::local_point(std::size_t ring, int j) const {
  const Ring& r = rings_[ring];
  const double ph = r.phi(j);
  return {r.sin_theta * std::cos(ph), r.sin_theta * std::sin(ph), r.cos_theta};
}

std::size_t QuadratureGrid::ring_of(std::size_t index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

Point3 QuadratureGrid::point(std::size_t index) const {
  const std::size_t r = ring_of(index);
  return point(r, static_cast<int>(index - offsets_[r]));
}

double QuadratureGrid::weight(std::size_t index) const { return rings_[ring_of(index)].weight; }

double QuadratureGrid::total_weight() const {
  double s = 0.0;
  for (const Ring& r : rings_) s += r.weight * r.n_phi;
  return s;
}

QuadratureGrid QuadratureGrid::rotated(const Frame& rotation) const {
  return QuadratureGrid(rotation * frame_, rings_);
}

QuadratureGrid make_grid(int n_theta, int n_phi, const Frame& frame) {
  if (n_theta < 2) throw std::invalid_argument("make_grid: n_theta must be >= 2");
  if (n_phi < 4) throw std::invalid_argument("make_grid: n_phi must be >= 4");
  return make_band_grid(0.0, kPi, n_theta, n_phi, frame);
}

QuadratureGrid make_band_grid(double theta_a, double theta_b, int n_theta, int n_phi,
                              const Frame& frame) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("make_band_grid: empty grid");
  if (!(theta_a >= 0.0 && theta_b <= kPi + 1e-15 && theta_a < theta_b))
    throw std::invalid_argument("make_band_grid: need 0 <= theta_a < theta_b <= pi");
  // t = cos theta runs over [cos theta_b, cos theta_a]
  const GaussLegendreRule rule = gauss_legendre_nodes(n_theta, std::cos(theta_b), std::cos(theta_a));
  const double dphi = 2.0 * kPi / n_phi;
  std::vector<Ring> rings;
  rings.reserve(static_cast<std::size_t>(n_theta));
  for (int i = n_theta - 1; i >= 0; --i) {  // north to south
    const double t = rule.nodes[static_cast<std::size_t>(i)];
    Ring r;
    r.cos_theta = t;
    r.sin_theta = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
    r.n_phi = n_phi;
    r.phi0 = 0.0;
    r.weight = rule.weights[static_cast<std::size_t>(i)] * dphi;
    rings.push_back(r);
  }
  return QuadratureGrid(frame, std::move(rings));
}

std::vector<Point3> fibonacci_sphere(std::size_t count) {
  return fibonacci_cap(count, kPi, Frame::identity());
}

std::vector<Point3> fibonacci_cap(std::size_t count, double radius, const Frame& frame) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double t_min = std::cos(radius);
  std::vector<Point3> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = 1.0 - (1.0 - t_min) * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double ph = golden * static_cast<double>(i);
    pts.push_back(frame.to_world({s * std::cos(ph), s * std::sin(ph), t}));
  }
  return pts;
}

}  // namespace lslab
