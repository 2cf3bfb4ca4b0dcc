#pragma once

// Hand-rolled generators for the property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include "lslab/geom.hpp"

namespace gen {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  double normal() { return std::normal_distribution<double>()(rng); }

  // uniform on the sphere
  lslab::Point3 point() {
    const double z = uniform(-1.0, 1.0), ph = uniform(0.0, 2.0 * M_PI);
    const double s = std::sqrt(1.0 - z * z);
    return {s * std::cos(ph), s * std::sin(ph), z};
  }
  // point at geodesic distance d from p, in a random direction
  lslab::Point3 at_distance(const lslab::Point3& p, double d) {
    lslab::Point3 q = point();
    lslab::Point3 t = lslab::cross(p, q);
    while (t.norm() < 1e-6) t = lslab::cross(p, q = point());
    t = t.normalized();
    return {p.x * std::cos(d) + t.x * std::sin(d), p.y * std::cos(d) + t.y * std::sin(d),
            p.z * std::cos(d) + t.z * std::sin(d)};
  }
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace gen
