#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lslab/measure.hpp"
#include "lslab/region.hpp"

namespace lslab {

/// Symbolic measure: sum of scaled region indicators and atoms whose scalars
/// may depend on lambda.
///   lebesgue | scaled(c, R) | atom(th, ph, mass) | sum(M1, M2)
struct MeasureSpec {
  struct Part {
    Scalar scale = Scalar::constant(1.0);
    Region region = Region::all();
  };
  struct AtomSpec {
    Point3 point;
    Scalar mass = Scalar::constant(1.0);
  };
  std::vector<Part> parts;
  std::vector<AtomSpec> atoms;

  bool depends_on_lambda() const;
  MeasureModel resolve(double lambda) const;
  std::string to_string() const;
};

MeasureSpec parse_measure(std::string_view text);

}  // namespace lslab
