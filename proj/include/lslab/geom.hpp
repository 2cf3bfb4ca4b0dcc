#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lslab {

struct Point3 {
  double x = 0.0, y = 0.0, z = 1.0;

  static Point3 from_spherical(double theta, double phi) {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
  }
  double theta() const { return std::atan2(std::hypot(x, y), z); }
  double phi() const { return std::atan2(y, x); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Point3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
  Point3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline const Point3 kNorthPole{0.0, 0.0, 1.0};

/// Orthonormal frame; columns are the local x, y and z (pole) axes in world
/// coordinates, so world = M * local.
class Frame {
 public:
  Frame() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}
  explicit Frame(const std::array<double, 9>& row_major) : m_(row_major) {}

  static Frame identity() { return Frame(); }
  /// Rz(phi) * Ry(theta) for the spherical angles of `pole`; identity for the north pole.
  static Frame with_pole(const Point3& pole);
  static Frame axis_angle(const Point3& axis, double angle);

  double operator()(int r, int c) const { return m_[static_cast<std::size_t>(3 * r + c)]; }
  Point3 pole() const { return {m_[2], m_[5], m_[8]}; }
  Point3 to_world(const Point3& local) const;
  Point3 to_local(const Point3& world) const;
  Frame transposed() const;
  const std::array<double, 9>& data() const { return m_; }

  friend Frame operator*(const Frame& a, const Frame& b);

 private:
  std::array<double, 9> m_;
};

/// Unit normal of the plane of a great circle.
struct GeodesicAxis {
  Point3 axis{0.0, 0.0, 1.0};
};

/// arccos(a.b) evaluated as atan2(|a x b|, a.b).
double geodesic_distance(const Point3& a, const Point3& b);

/// Angular distance from x to the great circle with unit normal `gamma.axis`.
double tube_distance(const Point3& x, const GeodesicAxis& gamma);

/// vol B(z, s) = 2 pi (1 - cos s).
double ball_volume(double radius);
/// vol T_w(gamma) = 4 pi sin w.
double tube_volume(double halfwidth);

/// One colatitude ring of a quadrature grid, in the grid's own frame.
struct Ring {
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  int n_phi = 1;
  double phi0 = 0.0;
  double weight = 0.0;  // per node

  double phi(int j) const { return phi0 + 2.0 * 3.14159265358979323846 * j / n_phi; }
};

/// Gauss-Legendre (in cos theta) x uniform azimuth nodes, possibly restricted
/// to a colatitude band, expressed in a frame. Nodes are ordered ring by ring.
class QuadratureGrid {
 public:
  QuadratureGrid() = default;
  QuadratureGrid(Frame frame, std::vector<Ring> rings);

  const Frame& frame() const { return frame_; }
  const std::vector<Ring>& rings() const { return rings_; }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t ring_offset(std::size_t r) const { return offsets_[r]; }
  int n_theta() const { return static_cast<int>(rings_.size()); }
  int max_n_phi() const;

  Point3 local_point(std::size_t ring, int j) const;
  Point3 point(std::size_t ring, int j) const { return frame_.to_world(local_point(ring, j)); }
  /// Flat index access; O(log n_theta).
  Point3 point(std::size_t index) const;
  double weight(std::size_t index) const;
  double total_weight() const;

  /// Same nodes, frame premultiplied by `rotation`.
  QuadratureGrid rotated(const Frame& rotation) const;

 private:
  std::size_t ring_of(std::size_t index) const;
  Frame frame_;
  std::vector<Ring> rings_;
  std::vector<std::size_t> offsets_;
};

/// Full-sphere grid. Requires n_theta >= 2, n_phi >= 4. Exact for spherical
/// polynomials of degree <= min(2 n_theta - 1, n_phi - 1).
QuadratureGrid make_grid(int n_theta, int n_phi, const Frame& frame = Frame::identity());

/// Grid on the colatitude band [theta_a, theta_b] of `frame` (Gauss-Legendre in cos theta).
QuadratureGrid make_band_grid(double theta_a, double theta_b, int n_theta, int n_phi,
                              const Frame& frame = Frame::identity());

/// Area-uniform Fibonacci lattice on the whole sphere.
std::vector<Point3> fibonacci_sphere(std::size_t count);
/// Fibonacci lattice restricted to the cap of colatitude <= radius around frame's pole.
std::vector<Point3> fibonacci_cap(std::size_t count, double radius, const Frame& frame);

}  // namespace lslab
