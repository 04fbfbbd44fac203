#pragma once

// Verification campaigns. Each suite samples states deterministically from
// (seed, sample index), evaluates one or more relations per sample and
// collects them into a SuiteReport whose content depends only on the
// options, never on thread scheduling.
//
// Tolerance ladder: 1e-9 for exact identities, 1e-4 for optimizer vs closed
// form, 1e-3 / 2e-3 for inequalities whose sides both carry optimizer bias.

#include <string_view>

#include "qcorr/optimizer.hpp"
#include "qcorr/report.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class Family { Ginibre, Bell, ClassicalQuantum };

std::string_view to_string(Family family);

struct SuiteOptions {
  std::size_t samples = 100;
  Dims dims = {2, 2};
  std::uint64_t seed = 1;
  OptimizerConfig cfg;
  Family family = Family::Ginibre;    // theorem1 only
  std::size_t channels_per_state = 1;  // monotone only
  std::size_t max_kraus = 3;           // monotone: Kraus counts cycle 1..max_kraus
  unsigned threads = 0;                // 0 = hardware concurrency

  nlohmann::json echo(std::string_view suite) const;
};

inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kClosedFormTol = 1e-4;
inline constexpr double kInequalitySlack = 1e-3;
inline constexpr double kMonotoneSlack = 2e-3;
inline constexpr double kZeroTol = 1e-4;
inline constexpr double kProbeDiscordThreshold = 0.01;
inline constexpr double kProbeDeficitThreshold = 0.005;

// Delta_mu >= Delta, Delta_mu >= delta_mu, log2 n - S(rho_B) >= Delta - delta.
SuiteReport run_theorem1_suite(const SuiteOptions& opt);

// sum p_i S(rho_A|i) = S(dephased rho_AB) - S(dephased rho_B) for random
// states and random measurements. No optimization.
SuiteReport run_identity_suite(const SuiteOptions& opt);

// Numerical Delta_mu and delta_mu against f(c_min) - f(c1, c2, c3) on
// uniform Bell-diagonal samples. Ignores dims and family.
SuiteReport run_bell_crosscheck_suite(const SuiteOptions& opt);

// Haar pure |psi>_ABC on dims [a, b, c]: delta_mu(rho_AB) = S(rho_B) -
// S_chi(rho_BC) with B measured; and, per sample, a purified Bell-diagonal
// state checked with Delta_mu in place of delta_mu.
SuiteReport run_tradeoff_suite(const SuiteOptions& opt);

// Forward direction on classical-quantum states (both unlocalizable measures
// below 1e-4) plus a threshold probe on generic states: delta_mu > 0.01
// must come with Delta_mu > 0.005. Probes with delta_mu in [1e-4, 0.01] or
// below are listed as inconclusive.
SuiteReport run_zero_iff_suite(const SuiteOptions& opt);

// Delta_mu(Lambda_B(rho)) <= Delta_mu(rho) + 2e-3 and
// sum q_i Delta_mu(sigma_i) <= Delta_mu(rho) + 2e-3 over random channels.
SuiteReport run_monotonicity_suite(const SuiteOptions& opt);

// Dispatch by CLI name: theorem1, identity, bell, tradeoff, zero-iff,
// monotone. Throws BadSpec for unknown names.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opt);

}  // namespace qcorr
