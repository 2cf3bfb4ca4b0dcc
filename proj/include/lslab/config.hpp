#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lslab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings for one experiment run. Absent lists mean "use the experiment's defaults".
struct ExperimentConfig {
  std::string name;
  std::vector<double> lambdas;
  std::vector<int> degrees;
  std::vector<double> p_list;
  std::vector<double> r_list;
  std::vector<double> t_list;
  std::string region;
  std::string measure;
  double oversample = 2.0;
  int samples = -1;  // random functions per setting; -1 = default
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

/// Reads a small TOML subset: `key = value` lines (strings, numbers, booleans,
/// flat arrays), `#` comments, and an optional `[experiment]` header.
/// Unknown keys and duplicate keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace lslab

namespace lslab {

/// "1,2.5,inf" -> {1, 2.5, inf}.
std::vector<double> parse_number_list(const std::string& text);
/// "16:256:*2" (geometric), "10:40:+10" (arithmetic) or a plain list "16,32".
std::vector<int> parse_degree_range(const std::string& text);

}  // namespace lslab
