#include "lslab/region.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "lslab/specfun.hpp"

namespace lslab {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Intervals = std::vector<std::pair<double, double>>;

Intervals normalize(Intervals in) {
  std::sort(in.begin(), in.end());
  Intervals out;
  for (auto [a, b] : in) {
    a = std::max(a, 0.0);
    b = std::min(b, kPi);
    if (b - a <= 1e-15) continue;
    if (!out.empty() && a <= out.back().second)
      out.back().second = std::max(out.back().second, b);
    else
      out.emplace_back(a, b);
  }
  return out;
}

Intervals complement_of(const Intervals& in) {
  Intervals out;
  double cursor = 0.0;
  for (auto [a, b] : in) {
    if (a > cursor) out.emplace_back(cursor, a);
    cursor = std::max(cursor, b);
  }
  if (cursor < kPi) out.emplace_back(cursor, kPi);
  return normalize(out);
}

Intervals intersect(const Intervals& x, const Intervals& y) {
  Intervals out;
  for (auto [a, b] : x)
    for (auto [c, d] : y) {
      const double lo = std::max(a, c), hi = std::min(b, d);
      if (hi > lo) out.emplace_back(lo, hi);
    }
  return normalize(out);
}

Intervals flipped(const Intervals& in) {
  Intervals out;
  for (auto [a, b] : in) out.emplace_back(kPi - b, kPi - a);
  return normalize(out);
}

std::optional<AxialForm> combine(AxialForm a, AxialForm b, bool is_union) {
  if (a.axis && b.axis) {
    const double d = dot(*a.axis, *b.axis);
    if (d < -1.0 + 1e-12)
      b.intervals = flipped(b.intervals);
    else if (d < 1.0 - 1e-12)
      return std::nullopt;
  }
  AxialForm out;
  out.axis = a.axis ? a.axis : b.axis;
  if (is_union) {
    Intervals all = a.intervals;
    all.insert(all.end(), b.intervals.begin(), b.intervals.end());
    out.intervals = normalize(all);
  } else {
    out.intervals = intersect(a.intervals, b.intervals);
  }
  return out;
}

std::optional<AxialForm> axial_of(const Region::Node& n) {
  switch (n.kind) {
    case Region::Kind::All:
      return AxialForm{std::nullopt, {{0.0, kPi}}};
    case Region::Kind::Cap:
      return AxialForm{n.center, normalize({{0.0, n.a.value()}})};
    case Region::Kind::Tube: {
      const double w = n.a.value();
      return AxialForm{n.center, normalize({{0.5 * kPi - w, 0.5 * kPi + w}})};
    }
    case Region::Kind::Band:
      return AxialForm{n.center, normalize({{n.a.value(), n.b.value()}})};
    case Region::Kind::Complement: {
      auto inner = axial_of(*n.left);
      if (!inner) return std::nullopt;
      inner->intervals = complement_of(inner->intervals);
      return inner;
    }
    case Region::Kind::Union:
    case Region::Kind::Intersection: {
      auto l = axial_of(*n.left);
      auto r = axial_of(*n.right);
      if (!l || !r) return std::nullopt;
      return combine(*l, *r, n.kind == Region::Kind::Union);
    }
  }
  return std::nullopt;
}

std::shared_ptr<const Region::Node> resolve_node(const Region::Node& n, double lambda) {
  auto out = std::make_shared<Region::Node>(n);
  out->a = Scalar::constant(n.a.resolve(lambda));
  out->b = Scalar::constant(n.b.resolve(lambda));
  switch (n.kind) {
    case Region::Kind::Cap:
      if (!(out->a.c > 0.0 && out->a.c <= kPi))
        throw std::invalid_argument("cap radius must lie in (0, pi], got " + fmt_double(out->a.c));
      break;
    case Region::Kind::Tube:
      if (!(out->a.c > 0.0 && out->a.c < 0.5 * kPi))
        throw std::invalid_argument("tube halfwidth must lie in (0, pi/2), got " + fmt_double(out->a.c));
      break;
    case Region::Kind::Band:
      if (!(out->a.c >= 0.0 && out->a.c < out->b.c && out->b.c <= kPi))
        throw std::invalid_argument("band needs 0 <= theta1 < theta2 <= pi");
      break;
    default:
      break;
  }
  if (n.left) out->left = resolve_node(*n.left, lambda);
  if (n.right) out->right = resolve_node(*n.right, lambda);
  return out;
}

bool contains_node(const Region::Node& n, const Point3& x) {
  switch (n.kind) {
    case Region::Kind::All:
      return true;
    case Region::Kind::Cap:
      return geodesic_distance(x, n.center) <= n.a.value();
    case Region::Kind::Tube:
      return tube_distance(x, GeodesicAxis{n.center}) <= n.a.value();
    case Region::Kind::Band: {
      const double th = geodesic_distance(x, n.center);
      return th >= n.a.value() && th <= n.b.value();
    }
    case Region::Kind::Complement:
      return !contains_node(*n.left, x);
    case Region::Kind::Union:
      return contains_node(*n.left, x) || contains_node(*n.right, x);
    case Region::Kind::Intersection:
      return contains_node(*n.left, x) && contains_node(*n.right, x);
  }
  return false;
}

bool depends_node(const Region::Node& n) {
  return n.a.depends_on_lambda() || n.b.depends_on_lambda() || (n.left && depends_node(*n.left)) ||
         (n.right && depends_node(*n.right));
}

std::shared_ptr<const Region::Node> rotate_node(const Region::Node& n, const Frame& r) {
  auto out = std::make_shared<Region::Node>(n);
  out->center = r.to_world(n.center);
  if (n.left) out->left = rotate_node(*n.left, r);
  if (n.right) out->right = rotate_node(*n.right, r);
  return out;
}

std::string angles(const Point3& p) {
  const double ph = (std::hypot(p.x, p.y) == 0.0) ? 0.0 : p.phi();
  return fmt_double(p.theta()) + "," + fmt_double(ph);
}

std::string node_string(const Region::Node& n) {
  switch (n.kind) {
    case Region::Kind::All:
      return "all";
    case Region::Kind::Cap:
      return "cap(" + angles(n.center) + "," + n.a.to_string() + ")";
    case Region::Kind::Tube:
      return "tube(" + angles(n.center) + "," + n.a.to_string() + ")";
    case Region::Kind::Band: {
      std::string s = "band(" + n.a.to_string() + "," + n.b.to_string();
      if (dot(n.center, kNorthPole) < 1.0 - 1e-15) s += "," + angles(n.center);
      return s + ")";
    }
    case Region::Kind::Complement:
      return "not(" + node_string(*n.left) + ")";
    case Region::Kind::Union:
      return "union(" + node_string(*n.left) + "," + node_string(*n.right) + ")";
    case Region::Kind::Intersection:
      return "inter(" + node_string(*n.left) + "," + node_string(*n.right) + ")";
  }
  return "";
}

}  // namespace

double Scalar::resolve(double lambda) const {
  switch (kind) {
    case Kind::Constant:
      return c;
    case Kind::LogLambda:
      return std::log(lambda);
    case Kind::InvLambda:
      return 1.0 / lambda;
    case Kind::InvSqrtLambda:
      return 1.0 / std::sqrt(lambda);
    case Kind::Power:
      return std::pow(lambda, alpha);
    case Kind::PowerLog:
      return c * std::pow(lambda, alpha) * std::pow(std::log(lambda), beta);
  }
  return c;
}

double Scalar::value() const {
  if (depends_on_lambda()) throw std::logic_error("scalar " + to_string() + " needs lambda");
  return c;
}

std::string Scalar::to_string() const {
  switch (kind) {
    case Kind::Constant:
      return fmt_double(c);
    case Kind::LogLambda:
      return "log-lambda";
    case Kind::InvLambda:
      return "inv-lambda";
    case Kind::InvSqrtLambda:
      return "inv-sqrt-lambda";
    case Kind::Power:
      return "pow:" + fmt_double(alpha);
    case Kind::PowerLog:
      return "powlog:" + fmt_double(c) + ":" + fmt_double(alpha) + ":" + fmt_double(beta);
  }
  return "";
}

Region Region::all() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::All;
  return Region(n);
}

Region Region::cap(const Point3& center, Scalar radius) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cap;
  n->center = center.normalized();
  n->a = radius;
  return Region(n);
}

Region Region::tube(const GeodesicAxis& axis, Scalar halfwidth) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tube;
  n->center = axis.axis.normalized();
  n->a = halfwidth;
  return Region(n);
}

Region Region::band(Scalar theta1, Scalar theta2, const Point3& axis) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Band;
  n->center = axis.normalized();
  n->a = theta1;
  n->b = theta2;
  return Region(n);
}

Region Region::complement() const {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Complement;
  n->left = node_;
  return Region(n);
}

Region Region::set_union(const Region& a, const Region& b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Union;
  n->left = a.node_;
  n->right = b.node_;
  return Region(n);
}

Region Region::intersection(const Region& a, const Region& b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Intersection;
  n->left = a.node_;
  n->right = b.node_;
  return Region(n);
}

Region::Kind Region::kind() const { return node_->kind; }
bool Region::depends_on_lambda() const { return depends_node(*node_); }
Region Region::resolve(double lambda) const { return Region(resolve_node(*node_, lambda)); }
bool Region::contains(const Point3& x) const { return contains_node(*node_, x); }
Region Region::rotated(const Frame& rotation) const { return Region(rotate_node(*node_, rotation)); }
std::string Region::to_string() const { return node_string(*node_); }

std::optional<AxialForm> axial_form(const Region& region) {
  auto form = axial_of(region.node());
  if (form) form->intervals = normalize(form->intervals);
  return form;
}

namespace detail {

void SpecParser::skip_space() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool SpecParser::at_end() {
  skip_space();
  return pos_ >= text_.size();
}

bool SpecParser::try_consume(std::string_view token) {
  skip_space();
  if (text_.substr(pos_, token.size()) == token) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void SpecParser::expect(std::string_view token) {
  if (!try_consume(token)) fail("expected '" + std::string(token) + "'");
}

void SpecParser::fail(const std::string& message) const { throw ParseError(message, pos_); }

std::string SpecParser::identifier() {
  skip_space();
  const std::size_t start = pos_;
  while (pos_ < text_.size() &&
         (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' || text_[pos_] == '_'))
    ++pos_;
  if (pos_ == start) fail("expected identifier");
  return std::string(text_.substr(start, pos_ - start));
}

double SpecParser::number() {
  skip_space();
  const std::string rest(text_.substr(pos_));
  char* end = nullptr;
  const double v = std::strtod(rest.c_str(), &end);
  if (end == rest.c_str()) fail("expected number");
  pos_ += static_cast<std::size_t>(end - rest.c_str());
  return v;
}

Scalar SpecParser::scalar() {
  skip_space();
  if (try_consume("const:")) return Scalar::constant(number());
  if (try_consume("log-lambda")) return {Scalar::Kind::LogLambda, 0.0, 0.0, 0.0};
  if (try_consume("inv-sqrt-lambda")) return {Scalar::Kind::InvSqrtLambda, 0.0, 0.0, 0.0};
  if (try_consume("inv-lambda")) return {Scalar::Kind::InvLambda, 0.0, 0.0, 0.0};
  if (try_consume("powlog:")) {
    const double c = number();
    expect(":");
    const double a = number();
    expect(":");
    const double b = number();
    return Scalar::power_log(c, a, b);
  }
  if (try_consume("pow:")) return {Scalar::Kind::Power, 1.0, number(), 0.0};
  return Scalar::constant(number());
}

Region SpecParser::region() {
  const std::size_t start = pos_;
  const std::string id = identifier();
  if (id == "all") return Region::all();
  if (id == "cap" || id == "tube") {
    expect("(");
    const double th = number();
    expect(",");
    const double ph = number();
    expect(",");
    const Scalar r = scalar();
    expect(")");
    const Point3 c = Point3::from_spherical(th, ph);
    return id == "cap" ? Region::cap(c, r) : Region::tube(GeodesicAxis{c}, r);
  }
  if (id == "band") {
    expect("(");
    const Scalar a = scalar();
    expect(",");
    const Scalar b = scalar();
    Point3 axis = kNorthPole;
    if (try_consume(",")) {
      const double th = number();
      expect(",");
      const double ph = number();
      axis = Point3::from_spherical(th, ph);
    }
    expect(")");
    return Region::band(a, b, axis);
  }
  if (id == "not") {
    expect("(");
    Region inner = region();
    expect(")");
    return inner.complement();
  }
  if (id == "union" || id == "inter") {
    expect("(");
    Region a = region();
    expect(",");
    Region b = region();
    expect(")");
    return id == "union" ? Region::set_union(a, b) : Region::intersection(a, b);
  }
  pos_ = start;
  fail("unknown region '" + id + "'");
}

}  // namespace detail

Region parse_region(std::string_view text) {
  detail::SpecParser p(text);
  Region r = p.region();
  if (!p.at_end()) p.fail("trailing characters");
  return r.depends_on_lambda() ? r : r.resolve(1.0);
}

}  // namespace lslab
