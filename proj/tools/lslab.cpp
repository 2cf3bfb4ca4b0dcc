#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lslab/config.hpp"
#include "lslab/density.hpp"
#include "lslab/experiments.hpp"
#include "lslab/extremal.hpp"
#include "lslab/measure_spec.hpp"
#include "lslab/region.hpp"

using namespace lslab;

namespace {

BasisIndex parse_basis(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("basis must be band:<lambda> or eig:<n>, got '" + s + "'");
  const std::string kind = s.substr(0, colon), arg = s.substr(colon + 1);
  if (kind == "band") return BasisIndex::band(std::stod(arg));
  if (kind == "eig") return BasisIndex::eigenspace(std::stoi(arg));
  throw std::invalid_argument("unknown basis kind '" + kind + "'");
}

// Prints the summary, writes files, and turns the pass flags into the exit code.
int finish(const ExperimentResult& r, const std::string& out) {
  for (const auto& p : write_outputs(r, out)) std::cerr << "wrote " << p << "\n";
  std::cout << r.summary_json();
  return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lslab: sampling and Carleson constants for band-limited functions on the sphere"};
  app.require_subcommand(1);

  // experiment
  std::string exp_name, exp_config, exp_out;
  std::optional<std::uint64_t> exp_seed;
  auto* exp = app.add_subcommand("experiment", "run a named experiment and write CSV + JSON summary");
  exp->add_option("name", exp_name, "experiment name")->required();
  exp->add_option("--config", exp_config, "TOML config file");
  exp->add_option("--out", exp_out, "output directory (overrides the config)");
  exp->add_option("--seed", exp_seed, "random seed (overrides the config)");

  // ls2 / carleson2
  std::string region_spec, measure_spec, basis_spec;
  std::optional<double> c2_lambda;
  auto* ls2 = app.add_subcommand("ls2", "p = 2 Logvinenko-Sereda constant of a region");
  ls2->add_option("--region", region_spec)->required();
  ls2->add_option("--basis", basis_spec, "band:<lambda> or eig:<n>")->required();
  auto* c2 = app.add_subcommand("carleson2", "p = 2 Carleson constant of a measure");
  c2->add_option("--measure", measure_spec)->required();
  c2->add_option("--basis", basis_spec, "band:<lambda> or eig:<n>")->required();
  c2->add_option("--lambda", c2_lambda, "lambda used to resolve the measure (default: the basis lambda)");

  // zonal-norms / beam-norms
  std::string norms_p, norms_degrees, norms_out = "out";
  double norms_os = 2.0;
  CLI::App* norms[2];
  const char* norm_names[2] = {"zonal-norms", "beam-norms"};
  for (int i = 0; i < 2; ++i) {
    norms[i] = app.add_subcommand(norm_names[i], std::string("L^p norms of ") + (i ? "Gaussian beams" : "zonal harmonics"));
    norms[i]->add_option("--p", norms_p, "comma separated exponents (inf allowed)");
    norms[i]->add_option("--degrees", norms_degrees, "a:b:*2 or a list");
    norms[i]->add_option("--oversample", norms_os);
    norms[i]->add_option("--out", norms_out);
  }

  // heat
  std::string heat_mode = "real", heat_t, heat_out = "out";
  auto* heat = app.add_subcommand("heat", "heat kernel bound profiles");
  heat->add_option("--mode", heat_mode)->check(CLI::IsMember({"real", "complex"}));
  heat->add_option("--t", heat_t, "comma separated times");
  heat->add_option("--out", heat_out);

  // density
  std::string dens_target, dens_condition = "dense", dens_lambda = "16", dens_r = "1";
  auto* dens = app.add_subcommand("density", "density / sparsity / tube condition report");
  dens->add_option("--target", dens_target, "region or measure spec")->required();
  dens->add_option("--condition", dens_condition, "dense|sparse|symdense|tgcc|tubesparse");
  dens->add_option("--lambda", dens_lambda, "comma separated");
  dens->add_option("--r", dens_r, "comma separated radius multipliers");

  // interval
  std::string int_part, int_lambda, int_out = "out";
  auto* interval = app.add_subcommand("interval", "one-dimensional boundary model");
  interval->add_option("--experiment", int_part)
      ->required()
      ->check(CLI::IsMember({"dirichlet-counterexample", "near-boundary", "heat-diag"}));
  interval->add_option("--lambda", int_lambda, "comma separated");
  interval->add_option("--out", int_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*exp) {
      ExperimentConfig cfg = exp_config.empty() ? ExperimentConfig{} : load_config(exp_config);
      if (exp_seed) cfg.seed = *exp_seed;
      if (!exp_out.empty()) cfg.out_dir = exp_out;
      return finish(run_experiment(exp_name, cfg), cfg.out_dir);
    }
    if (*ls2) {
      const ExtremalResult r = ls_constant_2(parse_region(region_spec), parse_basis(basis_spec));
      std::cout << to_json(r, region_spec, 2.0, "bottom eigenvector of the Gram matrix") << "\n";
      return 0;
    }
    if (*c2) {
      const BasisIndex b = parse_basis(basis_spec);
      const MeasureModel model = parse_measure(measure_spec).resolve(c2_lambda.value_or(b.lambda()));
      QuadraturePolicy pol;
      pol.degree = b.max_degree();
      pol.p = 2.0;
      const ExtremalResult r = carleson_constant_2(discretize(model, pol), b);
      std::cout << to_json(r, measure_spec, 2.0, "top eigenvector of the Gram matrix") << "\n";
      return 0;
    }
    for (int i = 0; i < 2; ++i)
      if (*norms[i]) {
        ExperimentConfig cfg;
        if (!norms_p.empty()) cfg.p_list = parse_number_list(norms_p);
        if (!norms_degrees.empty()) cfg.degrees = parse_degree_range(norms_degrees);
        cfg.oversample = norms_os;
        return finish(run_experiment(norm_names[i], cfg), norms_out);
      }
    if (*heat) {
      ExperimentConfig cfg;
      if (!heat_t.empty()) cfg.t_list = parse_number_list(heat_t);
      return finish(run_experiment(heat_mode == "real" ? "heat-gaussian" : "heat-complex", cfg), heat_out);
    }
    if (*dens) {
      const DensityCondition cond = parse_condition(dens_condition);
      // regions first; anything else must be a measure
      std::optional<Region> region;
      std::optional<MeasureSpec> measure;
      try {
        region = parse_region(dens_target);
      } catch (const std::exception&) {
        measure = parse_measure(dens_target);
      }
      std::cout << "condition,lambda,r,radius,worst_ratio,witness_theta,witness_phi,centers_tested\n";
      for (double lam : parse_number_list(dens_lambda))
        for (double r : parse_number_list(dens_r)) {
          const DensityReport rep = region ? density_report(*region, cond, lam, r)
                                           : density_report(measure->resolve(lam), cond, lam, r);
          std::cout << to_string(cond) << "," << format_number(lam) << "," << format_number(r) << ","
                    << format_number(rep.radius) << "," << format_number(rep.worst_ratio) << ","
                    << format_number(rep.witness.theta()) << "," << format_number(rep.witness.phi()) << ","
                    << rep.centers_tested << "\n";
        }
      return 0;
    }
    if (*interval) {
      ExperimentConfig cfg;
      if (!int_lambda.empty()) cfg.lambdas = parse_number_list(int_lambda);
      return finish(run_interval_part(int_part, cfg), int_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "lslab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
