#include "lslab/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lslab {

namespace {

using Value = std::variant<std::string, double, bool, std::vector<double>>;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// drop a trailing comment that is not inside a string
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

double parse_number(const std::string& s, int line) {
  std::string t;
  for (char c : s)
    if (c != '_') t += c;  // TOML digit separators
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size()) throw ConfigError("line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

Value parse_value(const std::string& raw, int line) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("line " + std::to_string(line) + ": missing value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw ConfigError("line " + std::to_string(line) + ": unterminated string");
    return s.substr(1, s.size() - 2);
  }
  if (s == "true") return true;
  if (s == "false") return false;
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError("line " + std::to_string(line) + ": unterminated array");
    std::vector<double> out;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;  // trailing comma
      out.push_back(parse_number(trim(item), line));
    }
    return out;
  }
  return parse_number(s, line);
}

template <class T>
const T& as(const Value& v, const std::string& key) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw ConfigError("key '" + key + "' has the wrong type");
}

double as_number(const Value& v, const std::string& key) { return as<double>(v, key); }

std::vector<double> as_list(const Value& v, const std::string& key) {
  if (const double* d = std::get_if<double>(&v)) return {*d};
  return as<std::vector<double>>(v, key);
}

int as_int(double v, const std::string& key) {
  if (v != std::floor(v)) throw ConfigError("key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s != "[experiment]") throw ConfigError("line " + std::to_string(line) + ": unknown table " + s);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    const Value v = parse_value(s.substr(eq + 1), line);

    if (key == "name") cfg.name = as<std::string>(v, key);
    else if (key == "lambda") cfg.lambdas = as_list(v, key);
    else if (key == "degrees") {
      for (double d : as_list(v, key)) cfg.degrees.push_back(as_int(d, key));
    } else if (key == "p") cfg.p_list = as_list(v, key);
    else if (key == "r") cfg.r_list = as_list(v, key);
    else if (key == "t") cfg.t_list = as_list(v, key);
    else if (key == "region") cfg.region = as<std::string>(v, key);
    else if (key == "measure") cfg.measure = as<std::string>(v, key);
    else if (key == "oversample") cfg.oversample = as_number(v, key);
    else if (key == "samples") cfg.samples = as_int(as_number(v, key), key);
    else if (key == "seed") {
      const double d = as_number(v, key);
      if (d < 0) throw ConfigError("seed must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(as_int(d, key));
    } else if (key == "out") cfg.out_dir = as<std::string>(v, key);
    else throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
  if (cfg.oversample < 1.0) throw ConfigError("oversample must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace lslab

namespace lslab {

namespace {

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  const double v = to_number(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> v;
  for (const auto& s : split(text, ',')) v.push_back(to_number(s));
  return v;
}

std::vector<int> parse_degree_range(const std::string& text) {
  if (text.find(':') == std::string::npos) {
    std::vector<int> v;
    for (const auto& s : split(text, ',')) v.push_back(to_int(s));
    return v;
  }
  const auto parts = split(text, ':');
  if (parts.size() != 3 || parts[2].size() < 2) throw ConfigError("bad range '" + text + "', want a:b:*k or a:b:+k");
  const int a = to_int(parts[0]), b = to_int(parts[1]), k = to_int(parts[2].substr(1));
  const char op = parts[2][0];
  if (a < 0 || b < a) throw ConfigError("bad range bounds in '" + text + "'");
  if ((op == '*' && (k < 2 || a < 1)) || (op == '+' && k < 1) || (op != '*' && op != '+'))
    throw ConfigError("bad range step in '" + text + "'");
  std::vector<int> v;
  for (long x = a; x <= b; x = op == '*' ? x * k : x + k) v.push_back(static_cast<int>(x));
  return v;
}

}  // namespace lslab
