#pragma once

// Complex matrix algebra and entropy primitives shared by every other module.
//
// Basis ordering convention: a product basis |a>|b>|c>... is enumerated with
// the first subsystem as the slowest (outermost) index, i.e. the same order a
// Kronecker product A (x) B produces.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/error.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

// Bipartite subsystem selector.
enum class Party { A, B };

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

std::size_t product(std::span<const std::size_t> dims);

// Hermitian, positive semidefinite, unit-trace matrix with declared subsystem
// dimensions. Instances are immutable; the clamped spectrum is computed once
// at construction.
class DensityMatrix {
 public:
  // Checks the three invariants at the fixed tolerances. Eigenvalues in
  // [-1e-10, 0) are clamped to zero and the spectrum renormalized; anything
  // more negative is NotPositive.
  static DensityMatrix validate(const ComplexMatrix& m, Dims dims);

  // For matrices produced by trace-preserving maps of validated states. The
  // matrix is hermitized, its trace normalized and every negative eigenvalue
  // clamped. Never throws on numerical noise, only on dimension mismatch.
  static DensityMatrix from_trusted(const ComplexMatrix& m, Dims dims);

  const Dims& dims() const noexcept { return dims_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t side() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  // Ascending, clamped to [0, 1], summing to one.
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  DensityMatrix(Dims dims, ComplexMatrix matrix, RealVector eigenvalues)
      : dims_(std::move(dims)), matrix_(std::move(matrix)), eigenvalues_(std::move(eigenvalues)) {}

  // Rebuilds V diag(l) V^dagger with negative eigenvalues set to zero.
  static DensityMatrix rebuild_clamped(const ComplexMatrix& h, Dims dims);

  Dims dims_;
  ComplexMatrix matrix_;
  RealVector eigenvalues_;
};

class PureStateVector {
 public:
  static PureStateVector validate(const ComplexVector& amplitudes, Dims dims);
  // Rescales to unit norm; for vectors produced internally.
  static PureStateVector normalized(const ComplexVector& amplitudes, Dims dims);

  const Dims& dims() const noexcept { return dims_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  DensityMatrix to_density() const;

 private:
  PureStateVector(Dims dims, ComplexVector amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {}

  Dims dims_;
  ComplexVector amplitudes_;
};

// Shannon entropy in bits of a probability vector, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
double shannon_entropy(const RealVector& probabilities);

double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of a Hermitian matrix that is a state up to rounding: eigenvalues
// are clamped at zero before the Shannon sum. No validation is done.
double hermitian_entropy(const ComplexMatrix& m);

// Traces out every subsystem not listed in `keep` (indices into dims, kept in
// ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Party keep);

// Reduced state of a pure vector on the listed subsystems.
DensityMatrix reduced_state(const PureStateVector& psi, std::span<const std::size_t> keep);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition purification sum_k sqrt(l_k) |e_k>|k> with the ancilla
// appended as the last subsystem. Eigenvalues are taken in descending order,
// only those above 1e-12 are kept, and each eigenvector's first nonzero
// component is made real positive.
PureStateVector purify(const DensityMatrix& rho);

// Multiplies the vector by a global phase so that its first component with
// modulus above `threshold` is real and positive.
void fix_phase(Eigen::Ref<ComplexVector> v, double threshold = 1e-12);

// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity(std::size_t n);

}  // namespace qcorr
