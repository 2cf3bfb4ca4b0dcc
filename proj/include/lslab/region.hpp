#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lslab/geom.hpp"

namespace lslab {

/// A real parameter that may depend on the frequency lambda.
struct Scalar {
  enum class Kind { Constant, LogLambda, InvLambda, InvSqrtLambda, Power, PowerLog };
  Kind kind = Kind::Constant;
  double c = 0.0;      // constant or prefactor
  double alpha = 0.0;  // exponent of lambda
  double beta = 0.0;   // exponent of log lambda

  static Scalar constant(double v) { return {Kind::Constant, v, 0.0, 0.0}; }
  /// c * lambda^alpha * (log lambda)^beta
  static Scalar power_log(double c, double alpha, double beta) {
    return {Kind::PowerLog, c, alpha, beta};
  }

  bool depends_on_lambda() const { return kind != Kind::Constant; }
  double resolve(double lambda) const;
  double value() const;  // throws if lambda-dependent
  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Symbolic region on S^2: caps, tubes, bands and their boolean combinations.
class Region {
 public:
  enum class Kind { All, Cap, Tube, Band, Complement, Union, Intersection };

  static Region all();
  static Region cap(const Point3& center, Scalar radius);
  static Region cap(const Point3& center, double radius) { return cap(center, Scalar::constant(radius)); }
  static Region tube(const GeodesicAxis& axis, Scalar halfwidth);
  static Region tube(const GeodesicAxis& axis, double w) { return tube(axis, Scalar::constant(w)); }
  /// Colatitudes [theta1, theta2] measured from `axis` (north pole by default).
  static Region band(Scalar theta1, Scalar theta2, const Point3& axis = kNorthPole);
  static Region band(double theta1, double theta2, const Point3& axis = kNorthPole) {
    return band(Scalar::constant(theta1), Scalar::constant(theta2), axis);
  }
  Region complement() const;
  static Region set_union(const Region& a, const Region& b);
  static Region intersection(const Region& a, const Region& b);

  Kind kind() const;
  bool depends_on_lambda() const;
  /// Substitutes lambda into every parameter and validates ranges.
  Region resolve(double lambda) const;
  /// Closed-set membership; requires a resolved region.
  bool contains(const Point3& x) const;
  Region rotated(const Frame& rotation) const;
  std::string to_string() const;

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit Region(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Region::Node {
  Kind kind = Kind::All;
  Point3 center{0.0, 0.0, 1.0};  // cap center, tube axis or band axis
  Scalar a, b;                   // cap radius | tube halfwidth | band colatitudes
  std::shared_ptr<const Node> left, right;
};

/// Region expressed as a union of closed colatitude intervals around one axis.
/// `axis` is empty for regions with no preferred axis (All and its complement).
struct AxialForm {
  std::optional<Point3> axis;
  std::vector<std::pair<double, double>> intervals;
};

/// Succeeds when every primitive of a resolved region shares one axis up to sign.
std::optional<AxialForm> axial_form(const Region& region);

/// Parses the region mini-language:
///   all | cap(th,ph,r) | tube(th,ph,w) | band(th1,th2) | not(R) | union(A,B) | inter(A,B)
/// Numeric slots accept decimals and the lambda forms const:x, log-lambda,
/// inv-lambda, inv-sqrt-lambda, pow:a, powlog:c:a:b (= c lambda^a (log lambda)^b).
Region parse_region(std::string_view text);

namespace detail {

/// Cursor over a spec string shared by the region and measure grammars.
class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  void skip_space();
  bool at_end();
  bool try_consume(std::string_view token);
  void expect(std::string_view token);
  std::string identifier();
  double number();
  Scalar scalar();
  Region region();
  [[noreturn]] void fail(const std::string& message) const;
  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

}  // namespace lslab
