#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lslab/measure.hpp"
#include "lslab/region.hpp"
#include "lslab/spectrum.hpp"

namespace lslab {

/// Dense Hermitian matrix, row-major.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : n_(n), a_(n * n, cplx(0.0)) {}

  std::size_t dim() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double frobenius_norm() const;
  /// max |G_ij - conj(G_ji)| / ||G||_F (0 for the zero matrix).
  double hermitian_defect() const;
  bool is_real() const;
  static HermitianMatrix identity(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

struct EigenSystem {
  std::vector<double> values;             // ascending
  std::vector<std::vector<cplx>> vectors;  // vectors[i] belongs to values[i]; empty if not requested
  int sweeps = 0;
};

/// Cyclic Jacobi on a real symmetric n x n matrix (row-major). Stops when the
/// off-diagonal Frobenius norm is <= 1e-12 ||A||_F; throws after 60 sweeps.
EigenSystem jacobi_symmetric(std::vector<double> a, std::size_t n, bool want_vectors);

/// Eigen-decomposition through the real doubling [[Re, -Im], [Im, Re]]; each
/// eigenvalue appears twice there and the pairs are merged. Purely real input
/// skips the doubling.
EigenSystem hermitian_eigs(const HermitianMatrix& h, bool want_vectors = false);

/// G_ij = int Y_i conj(Y_j) dmu with harmonics taken in `frame`. Parallel over rings.
/// Throws when a grid is too coarse to integrate degree 2N exactly.
HermitianMatrix gram_matrix(const BasisIndex& basis, const Measure& mu, const Frame& frame = Frame());
/// Per-node reference implementation of gram_matrix, serial.
HermitianMatrix gram_matrix_serial(const BasisIndex& basis, const Measure& mu, const Frame& frame = Frame());

/// Gram matrix of a measure that is axisymmetric about the pole of `frame`:
/// block diagonal in the order k, each block real symmetric. Blocks k and -k
/// coincide, so only k >= 0 is stored.
struct ConcentrationBlocks {
  BasisIndex basis;
  Frame frame;
  struct Block {
    int k = 0;
    int n_lo = 0;
    std::size_t size = 0;
    std::vector<double> a;  // row-major
  };
  std::vector<Block> blocks;
};

/// Throws std::invalid_argument if mu is not axisymmetric about frame's pole.
ConcentrationBlocks concentration_blocks(const BasisIndex& basis, const Measure& mu, const Frame& frame);

/// Frame in which mu is axisymmetric (pole on the common axis), if any.
std::optional<Frame> axisymmetric_frame(const Measure& mu);

struct ExtremalResult {
  double value = 0.0;
  SpectralFunction extremizer;
  bool certified = false;
  int iterations = 0;
};

/// All eigenvalues of the Gram matrix of mu over `basis`, ascending, using the
/// block route when mu is axisymmetric and the dense route otherwise.
std::vector<double> concentration_eigenvalues(const BasisIndex& basis, const Measure& mu);

/// Smallest (want_max = false) or largest eigenpair of the Gram matrix.
ExtremalResult extreme_eigenpair(const BasisIndex& basis, const Measure& mu, bool want_max);

/// lambda_min of the Gram matrix of 1_region dV.
ExtremalResult ls_constant_2(const Region& region, const BasisIndex& basis);
/// lambda_max of the Gram matrix of mu.
ExtremalResult carleson_constant_2(const Measure& mu, const BasisIndex& basis);

/// int |f|^p dmu / int |f|^p dV. Throws on a zero denominator.
double ratio_p(const SpectralFunction& f, const Measure& mu, double p, double oversample = 2.0);

enum class SearchDirection { Min, Max };

struct SearchOptions {
  int restarts = 8;  // zonal, beam, projector, bottom and top p = 2 eigenvectors, then random
  int max_iterations = 500;
  double step_tolerance = 1e-9;
  double armijo = 1e-4;
  double oversample = 2.0;
};

/// Projected gradient on the unit coefficient sphere for ratio_p. Never certified.
ExtremalResult search_extremal_p(const BasisIndex& basis, const Measure& mu, double p,
                                 SearchDirection direction, std::uint64_t seed,
                                 const SearchOptions& options = {});

std::string to_json(const ExtremalResult& r, const std::string& measure_spec, double p,
                    const std::string& extremizer_ref);

}  // namespace lslab
