#pragma once

// Seeded generators for the state families the verification suites sample:
// Bell-diagonal states, Ginibre mixed states, Haar pure states,
// classical-quantum states, and random local channels on B.
//
// Pauli conventions: sigma1 = [[0,1],[1,0]], sigma2 = [[0,-i],[i,0]],
// sigma3 = [[1,0],[0,-1]].

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

enum class StateKind { GinibreMixed, HaarPure, ClassicalQuantum, BellDiagonalUniform, ChannelOnB };

std::string_view to_string(StateKind kind);

struct RandomSpec {
  std::uint64_t seed = 0;
  Dims dims;
  StateKind kind = StateKind::GinibreMixed;
  std::optional<std::size_t> rank;  // Ginibre rank; defaults to full rank

  // Throws BadSpec. Dimensions must be >= 2, except that the first of
  // several subsystems may be 1.
  void check() const;
};

using AnyState = std::variant<DensityMatrix, PureStateVector>;

const ComplexMatrix& pauli(int index);  // index 1, 2 or 3

// (I (x) I + sum_i c_i sigma_i (x) sigma_i)/4 on dims [2, 2].
DensityMatrix bell_diagonal(const BellDiagonalParams& c);

// |Phi+> = (|00> + |11>)/sqrt(2) as a density matrix.
DensityMatrix bell_state_phi_plus();

// Uniform on the positivity tetrahedron, by rejection from [-1, 1]^3.
BellDiagonalParams random_bell_params(Rng& rng);

ComplexMatrix ginibre_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-random unitary: QR of a Ginibre matrix with R's diagonal phases
// moved into Q.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

// Deterministic per spec. ChannelOnB is not a state kind here; use
// random_channel_on_B.
AnyState random_state(const RandomSpec& spec);

// random_state with pure outputs converted to density matrices.
DensityMatrix random_density(const RandomSpec& spec);

// (I (x) U) rho (I (x) U)^dagger.
DensityMatrix rotate_B(const DensityMatrix& rho, const ComplexMatrix& u);

class ChannelOnB {
 public:
  // Throws InvariantError unless sum_i V_i^dagger V_i = I within 1e-10.
  static ChannelOnB validate(std::vector<ComplexMatrix> kraus);

  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(kraus_.front().cols()); }

 private:
  explicit ChannelOnB(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {}
  std::vector<ComplexMatrix> kraus_;
};

// Kraus operators from the first n columns of a Haar unitary of side
// n * kraus_count, split into kraus_count row blocks.
ChannelOnB random_channel_on_B(std::size_t n, std::size_t kraus_count, std::uint64_t seed);

DensityMatrix apply_channel_on_B(const DensityMatrix& rho, const ChannelOnB& channel);

struct SloccBranch {
  double probability = 0.0;
  DensityMatrix state;  // maximally mixed placeholder when negligible
  bool negligible = false;
};

// q_i = Tr[V_i rho V_i^dagger], sigma_i = V_i rho V_i^dagger / q_i with V_i
// acting on B. Branches with q_i <= 1e-12 are flagged negligible.
std::vector<SloccBranch> slocc_branches(const DensityMatrix& rho, const ChannelOnB& channel);

}  // namespace qcorr
