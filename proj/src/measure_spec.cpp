#include "lslab/measure_spec.hpp"

#include <cmath>
#include <cstdio>

namespace lslab {

namespace {

MeasureSpec parse_node(detail::SpecParser& p) {
  const std::size_t start = p.position();
  const std::string id = p.identifier();
  MeasureSpec m;
  if (id == "lebesgue") {
    m.parts.push_back({});
    return m;
  }
  if (id == "scaled") {
    p.expect("(");
    const Scalar c = p.scalar();
    p.expect(",");
    const Region r = p.region();
    p.expect(")");
    m.parts.push_back({c, r});
    return m;
  }
  if (id == "atom") {
    p.expect("(");
    const double th = p.number();
    p.expect(",");
    const double ph = p.number();
    p.expect(",");
    const Scalar mass = p.scalar();
    p.expect(")");
    m.atoms.push_back({Point3::from_spherical(th, ph), mass});
    return m;
  }
  if (id == "sum") {
    p.expect("(");
    m = parse_node(p);
    while (p.try_consume(",")) {
      MeasureSpec more = parse_node(p);
      m.parts.insert(m.parts.end(), more.parts.begin(), more.parts.end());
      m.atoms.insert(m.atoms.end(), more.atoms.begin(), more.atoms.end());
    }
    p.expect(")");
    return m;
  }
  throw ParseError("unknown measure '" + id + "'", start);
}

}  // namespace

bool MeasureSpec::depends_on_lambda() const {
  for (const auto& part : parts)
    if (part.scale.depends_on_lambda() || part.region.depends_on_lambda()) return true;
  for (const auto& a : atoms)
    if (a.mass.depends_on_lambda()) return true;
  return false;
}

MeasureModel MeasureSpec::resolve(double lambda) const {
  MeasureModel m;
  for (const auto& part : parts) {
    const double c = part.scale.resolve(lambda);
    if (c < 0.0) throw std::invalid_argument("measure scale resolves to a negative value");
    m.parts.push_back({c, part.region.depends_on_lambda() ? part.region.resolve(lambda) : part.region});
  }
  for (const auto& a : atoms) {
    const double mass = a.mass.resolve(lambda);
    if (mass < 0.0) throw std::invalid_argument("atom mass resolves to a negative value");
    m.atoms.push_back({a.point, mass});
  }
  return m;
}

std::string MeasureSpec::to_string() const {
  std::vector<std::string> items;
  for (const auto& part : parts) {
    if (part.region.kind() == Region::Kind::All && !part.scale.depends_on_lambda() && part.scale.value() == 1.0)
      items.push_back("lebesgue");
    else
      items.push_back("scaled(" + part.scale.to_string() + "," + part.region.to_string() + ")");
  }
  for (const auto& a : atoms) {
    char buf[96];
    const double ph = std::hypot(a.point.x, a.point.y) == 0.0 ? 0.0 : a.point.phi();
    std::snprintf(buf, sizeof buf, "atom(%.17g,%.17g,", a.point.theta(), ph);
    items.push_back(buf + a.mass.to_string() + ")");
  }
  if (items.empty()) return "sum()";
  if (items.size() == 1) return items[0];
  std::string s = "sum(";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s + ")";
}

MeasureSpec parse_measure(std::string_view text) {
  detail::SpecParser p(text);
  MeasureSpec m = parse_node(p);
  if (!p.at_end()) p.fail("trailing characters");
  return m;
}

}  // namespace lslab
