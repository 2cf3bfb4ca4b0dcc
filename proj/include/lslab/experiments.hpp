#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lslab/config.hpp"
#include "lslab/slope.hpp"

namespace lslab {

/// %.17g, the only float format used in outputs.
std::string format_number(double v);

struct Table {
  std::string name;  // file suffix; empty for the main table
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  Table& row(const std::vector<std::string>& cells);
  std::string to_csv() const;
};

/// Shorthand for building CSV rows from numbers.
std::string cell(double v);
std::string cell(int v);
inline std::string cell(const std::string& s) { return s; }

struct Check {
  std::string anchor;     // what is being reproduced
  std::string expected;   // exponent or bound, human readable
  double measured = 0.0;
  std::string tolerance;  // how `measured` is compared
  bool pass = false;
};

struct NamedFit {
  std::string label;
  SlopeFit fit;
};

struct ExperimentResult {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Table> tables;
  std::vector<NamedFit> fits;
  std::vector<Check> checks;

  bool all_pass() const;
  std::string summary_json() const;
};

/// Names accepted by run_experiment, in catalogue order.
const std::vector<std::string>& experiment_names();

/// Runs a named experiment. Config lists that are empty take the experiment's
/// defaults. Throws std::invalid_argument for an unknown name.
ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& config);

/// Parts of the 1-D boundary model: dirichlet-counterexample, near-boundary, heat-diag.
ExperimentResult run_interval_part(const std::string& part, const ExperimentConfig& config);

/// Writes <dir>/<name>[-<table>].csv and <dir>/<name>.summary.json; returns the paths.
std::vector<std::string> write_outputs(const ExperimentResult& result, const std::string& dir);

}  // namespace lslab
