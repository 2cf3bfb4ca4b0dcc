#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lslab/extremal.hpp"

namespace lslab {

enum class BoundaryCondition { Dirichlet, Neumann };

std::string to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(const std::string& s);

/// Eigenbasis of -d^2/dx^2 on [0, pi] with frequencies k <= lambda.
/// Dirichlet: sqrt(2/pi) sin(kx), k = 1..floor(lambda).
/// Neumann: 1/sqrt(pi), then sqrt(2/pi) cos(kx), k = 1..floor(lambda).
struct IntervalBasis {
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double lambda = 1.0;

  IntervalBasis(BoundaryCondition bc, double lambda);
  int max_frequency() const { return static_cast<int>(std::floor(lambda)); }
  std::size_t size() const;
  int frequency(std::size_t i) const;
  double value(std::size_t i, double x) const;
  std::vector<double> values(double x) const;
};

/// Density on a uniform grid of [0, pi] (composite Simpson) plus atoms.
struct IntervalMeasure {
  struct Atom {
    double x = 0.0;
    double mass = 0.0;
  };
  std::vector<double> density;  // intervals + 1 samples; the number of intervals is even
  std::vector<Atom> atoms;

  static IntervalMeasure lebesgue(int intervals);
  IntervalMeasure& add_atom(double x, double mass);
  int intervals() const { return static_cast<int>(density.size()) - 1; }
  /// mu([a, b]) with Simpson for the density part; atoms counted on the closed interval.
  double mass(double a, double b) const;
};

/// G_jk = int e_j e_k dmu. Requires at least 8 floor(lambda) intervals.
HermitianMatrix interval_gram(const IntervalBasis& basis, const IntervalMeasure& mu);

/// Real function sum_i c_i e_i.
struct IntervalFunction {
  IntervalBasis basis;
  std::vector<double> coeffs;
  double operator()(double x) const;
};

IntervalFunction random_interval_function(const IntervalBasis& basis, std::uint64_t seed);

struct CounterexampleRow {
  BoundaryCondition bc;
  double lambda = 0.0;
  double carleson2 = 0.0;
  double sparsity_ratio = 0.0;
};

/// Per lambda and both conditions: lambda_max of the Gram matrix of dV + delta_z
/// (z = 0 by default) and mu(B(z, 1/lambda)) / vol B(z, 1/lambda).
std::vector<CounterexampleRow> dirichlet_counterexample(const std::vector<double>& lambda_list,
                                                        double atom_at = 0.0);

/// ||f||_{L^p(0, delta/lambda)} / ||f||_{L^p(0, pi)}.
double near_boundary_mass(const IntervalFunction& f, double delta, double lambda, double p);

/// p(t, x, x) = sum_k e^{-k^2 t} e_k(x)^2 over all modes (no band limit).
double interval_heat_diag(BoundaryCondition bc, double t, double x);

struct HeatDiagRow {
  double t = 0.0;
  double x = 0.0;
  double diag_times_sqrt_t = 0.0;
};

std::vector<HeatDiagRow> neumann_heat_diag(const std::vector<double>& t_list, const std::vector<double>& x_list);

}  // namespace lslab
