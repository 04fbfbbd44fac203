#pragma once

// Rank-1 projective (von Neumann) measurements and their action on states.

#include <cstddef>
#include <vector>

#include "qcorr/core.hpp"

namespace qcorr {

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kNegligibleProbability = 1e-12;

// Orthonormal basis {|b_i>} of one subsystem; outcome i is the projector
// |b_i><b_i|. Each basis vector has its first nonzero component real positive.
class ProjectiveMeasurement {
 public:
  // Columns of `basis` are the basis vectors. Throws NotOrthonormal when
  // either orthonormality or completeness fails at 1e-10.
  static ProjectiveMeasurement from_basis(const ComplexMatrix& basis);

  static ProjectiveMeasurement computational(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t outcomes() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  const ComplexMatrix& basis() const noexcept { return basis_; }
  ComplexVector vector(std::size_t i) const { return basis_.col(static_cast<Eigen::Index>(i)); }
  ComplexMatrix projector(std::size_t i) const;

  friend bool operator==(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
    return a.basis_ == b.basis_;
  }

 private:
  explicit ProjectiveMeasurement(ComplexMatrix basis) : basis_(std::move(basis)) {}

  ComplexMatrix basis_;
};

struct BlochVector {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 1.0;

  // Unit vector from the two measurement angles:
  // n1 = cos(x/2) sin(y/2), n2 = cos(x/2) cos(y/2), n3 = sin(x/2).
  static BlochVector from_angles(double x, double y);
};

// Two-outcome qubit measurement Pi_0 = (I + n.sigma)/2, Pi_1 = (I - n.sigma)/2.
ProjectiveMeasurement measurement_from_bloch(const BlochVector& n);

struct OutcomeEnsemble {
  std::vector<double> probabilities;
  // Conditional states of the unmeasured party. For outcomes with
  // probability <= 1e-12 the entry is a maximally mixed placeholder and
  // `negligible[i]` is set; such outcomes never enter entropy sums.
  std::vector<DensityMatrix> conditional_states;
  std::vector<bool> negligible;

  // sum_i p_i S(rho_i) over non-negligible outcomes.
  double average_conditional_entropy() const;
};

// sum_i (I (x) Pi_i) rho (I (x) Pi_i), with the projectors acting on the
// given party of a bipartite state.
DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveMeasurement& m, Party measured = Party::B);

// Dephasing of a single-system state: sum_i Pi_i rho Pi_i.
DensityMatrix dephase_local(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// p_i = Tr[(I (x) Pi_i) rho] and the post-measurement states of the other
// party.
OutcomeEnsemble outcome_ensemble(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                 Party measured = Party::B);

// True iff max entrywise |sum_i Pi_i rho Pi_i - rho| <= tol.
bool is_nondisturbing(const DensityMatrix& rho, const ProjectiveMeasurement& m, double tol);

// Measurement in the eigenbasis of a single-system state.
ProjectiveMeasurement eigenbasis_measurement(const DensityMatrix& rho);

}  // namespace qcorr
