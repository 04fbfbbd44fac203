#pragma once

// One-way correlation measures defined by optimizing over von Neumann
// measurements on one party, plus the closed forms for Bell-diagonal states.
//
// Notation in comments: delta = one-way discord, delta_mu = one-way
// unlocalizable discord, Delta = one-way information deficit, Delta_mu =
// one-way unlocalizable information deficit, N_RE = relative entropy of
// nonlocality, S_chi = one-way unlocalizable entanglement. All values are in
// bits.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/optimizer.hpp"

namespace qcorr {

struct Term {
  std::string name;
  double value;
  double coefficient;  // contribution to the measure is coefficient * value
};

struct MeasureResult {
  double value = 0.0;
  std::optional<OptResult> opt;
  std::vector<Term> components;

  // sum of coefficient * value over the components.
  double reconstruct() const;
};

// delta: S(rho_B) - S(rho_AB) + min sum_i p_i S(rho_A|i).
MeasureResult discord_one_way(const DensityMatrix& rho, const OptimizerConfig& cfg);

// delta_mu: as delta with the measurement term maximized.
MeasureResult unlocalizable_discord(const DensityMatrix& rho, const OptimizerConfig& cfg);

// Delta: min S(dephased) - S(rho_AB).
MeasureResult deficit_one_way(const DensityMatrix& rho, const OptimizerConfig& cfg);

// Delta_mu: max S(dephased) - S(rho_AB).
MeasureResult unlocalizable_deficit(const DensityMatrix& rho, const OptimizerConfig& cfg);

// N_RE: Delta_mu restricted to measurements that leave rho_B = Tr_A rho
// unchanged (tolerance 1e-8).
MeasureResult relative_entropy_nonlocality(const DensityMatrix& rho, const OptimizerConfig& cfg);

// S_chi: min over measurements on `measured` of
// S(rho_other) - sum_i p_i S(rho_other|i).
MeasureResult unlocalizable_entanglement(const DensityMatrix& rho, Party measured, const OptimizerConfig& cfg);

// Delta_mu of a single system in closed form: log2 n - S(rho).
double single_system_max_deficit(const DensityMatrix& rho_b);

// |sum_i p_i S(rho_A|i) - [S(dephased rho_AB) - S(dephased rho_B)]|. The
// bracketed identity holds exactly for every state and measurement.
double eq10_residual(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// Bell-diagonal coefficients of (I (x) I + sum_i c_i sigma_i (x) sigma_i)/4.
struct BellDiagonalParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  // The four eigenvalues (1-c1-c2-c3)/4, (1-c1+c2+c3)/4, (1+c1-c2+c3)/4,
  // (1+c1+c2-c3)/4 in that order.
  std::array<double, 4> eigenvalues() const;
  bool is_valid(double tol = 1e-12) const;
  // Throws NotPositive if an eigenvalue is below -1e-12.
  void check() const;
};

// Binary entropy form f(x) = -(1+x)/2 log2((1+x)/2) - (1-x)/2 log2((1-x)/2).
double f_scalar(double x);

// Shannon entropy of the four Bell-diagonal eigenvalues, minus 1.
double f_triple(const BellDiagonalParams& c);

// f(c_min) - f(c1, c2, c3) with c_min = min |c_i|. Equals Delta_mu and
// delta_mu of the Bell-diagonal state.
double bell_diagonal_closed_form(const BellDiagonalParams& c);

}  // namespace qcorr
