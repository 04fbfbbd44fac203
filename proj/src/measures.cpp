#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

void require_bipartite(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) throw Error(ErrorCode::BadDims, "state is not bipartite");
}

Party other_party(Party p) { return p == Party::A ? Party::B : Party::A; }

std::size_t party_dim(const DensityMatrix& rho, Party p) { return rho.dims()[p == Party::A ? 0 : 1]; }

// S(rho_B) - S(rho_AB) + extremum of the average conditional entropy of A.
MeasureResult discord_family(const DensityMatrix& rho, const OptimizerConfig& cfg, Direction direction) {
  require_bipartite(rho);
  const double s_b = von_neumann_entropy(partial_trace(rho, Party::B));
  const double s_ab = von_neumann_entropy(rho);
  Objective objective = [&rho](const ProjectiveMeasurement& m) {
    return outcome_ensemble(rho, m, Party::B).average_conditional_entropy();
  };
  OptResult opt = optimize_over_measurements(objective, party_dim(rho, Party::B), cfg.with_direction(direction));
  MeasureResult r;
  r.value = s_b - s_ab + opt.value;
  r.components = {{"S(rho_B)", s_b, 1.0},
                  {"S(rho_AB)", s_ab, -1.0},
                  {direction == Direction::Minimize ? "min sum p_i S(rho_A|i)" : "max sum p_i S(rho_A|i)", opt.value, 1.0}};
  r.opt = std::move(opt);
  return r;
}

// Extremum of S(dephased rho_AB) - S(rho_AB).
MeasureResult deficit_family(const DensityMatrix& rho, const OptimizerConfig& cfg, Direction direction) {
  require_bipartite(rho);
  const double s_ab = von_neumann_entropy(rho);
  Objective objective = [&rho](const ProjectiveMeasurement& m) {
    return von_neumann_entropy(dephase(rho, m, Party::B));
  };
  OptResult opt = optimize_over_measurements(objective, party_dim(rho, Party::B), cfg.with_direction(direction));
  MeasureResult r;
  r.value = opt.value - s_ab;
  r.components = {{direction == Direction::Minimize ? "min S(dephased rho_AB)" : "max S(dephased rho_AB)", opt.value, 1.0},
                  {"S(rho_AB)", s_ab, -1.0}};
  r.opt = std::move(opt);
  return r;
}

}  // namespace

double MeasureResult::reconstruct() const {
  double total = 0.0;
  for (const auto& t : components) total += t.coefficient * t.value;
  return total;
}

MeasureResult discord_one_way(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return discord_family(rho, cfg, Direction::Minimize);
}

MeasureResult unlocalizable_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return discord_family(rho, cfg, Direction::Maximize);
}

MeasureResult deficit_one_way(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return deficit_family(rho, cfg, Direction::Minimize);
}

MeasureResult unlocalizable_deficit(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return deficit_family(rho, cfg, Direction::Maximize);
}

MeasureResult relative_entropy_nonlocality(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  require_bipartite(rho);
  const double s_ab = von_neumann_entropy(rho);
  const DensityMatrix rho_b = partial_trace(rho, Party::B);
  Objective objective = [&rho](const ProjectiveMeasurement& m) {
    return von_neumann_entropy(dephase(rho, m, Party::B));
  };
  OptResult opt = optimize_constrained(objective, rho_b, cfg.with_direction(Direction::Maximize));
  MeasureResult r;
  r.value = opt.value - s_ab;
  r.components = {{"max S(dephased rho_AB) over non-disturbing measurements", opt.value, 1.0},
                  {"S(rho_AB)", s_ab, -1.0}};
  r.opt = std::move(opt);
  return r;
}

MeasureResult unlocalizable_entanglement(const DensityMatrix& rho, Party measured, const OptimizerConfig& cfg) {
  require_bipartite(rho);
  const Party other = other_party(measured);
  const double s_other = von_neumann_entropy(partial_trace(rho, other));
  Objective objective = [&rho, measured, s_other](const ProjectiveMeasurement& m) {
    return s_other - outcome_ensemble(rho, m, measured).average_conditional_entropy();
  };
  OptResult opt = optimize_over_measurements(objective, party_dim(rho, measured), cfg.with_direction(Direction::Minimize));
  MeasureResult r;
  r.value = opt.value;
  r.components = {{other == Party::A ? "S(rho_A)" : "S(rho_B)", s_other, 1.0},
                  {"max sum p_i S(conditional)", s_other - opt.value, -1.0}};
  r.opt = std::move(opt);
  return r;
}

double single_system_max_deficit(const DensityMatrix& rho_b) {
  return std::log2(static_cast<double>(rho_b.side())) - von_neumann_entropy(rho_b);
}

double eq10_residual(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  require_bipartite(rho);
  const double conditional = outcome_ensemble(rho, m, Party::B).average_conditional_entropy();
  const double dephased_ab = von_neumann_entropy(dephase(rho, m, Party::B));
  const double dephased_b = von_neumann_entropy(dephase_local(partial_trace(rho, Party::B), m));
  return std::abs(conditional - (dephased_ab - dephased_b));
}

std::array<double, 4> BellDiagonalParams::eigenvalues() const {
  return {(1.0 - c1 - c2 - c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0, (1.0 + c1 - c2 + c3) / 4.0,
          (1.0 + c1 + c2 - c3) / 4.0};
}

bool BellDiagonalParams::is_valid(double tol) const {
  const auto l = eigenvalues();
  return std::all_of(l.begin(), l.end(), [tol](double v) { return v >= -tol; });
}

void BellDiagonalParams::check() const {
  const auto l = eigenvalues();
  const double worst = *std::min_element(l.begin(), l.end());
  if (worst < -1e-12) {
    std::ostringstream os;
    os << "Bell-diagonal eigenvalue " << worst << " for c = (" << c1 << ", " << c2 << ", " << c3 << ")";
    throw Error(ErrorCode::NotPositive, os.str(), -worst);
  }
}

double f_scalar(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "f(x) needs x in [-1, 1], got " << x;
    throw Error(ErrorCode::BadSpec, os.str());
  }
  x = std::clamp(x, -1.0, 1.0);
  const double p[2] = {(1.0 + x) / 2.0, (1.0 - x) / 2.0};
  return shannon_entropy(std::span<const double>(p, 2));
}

double f_triple(const BellDiagonalParams& c) {
  c.check();
  auto l = c.eigenvalues();
  for (auto& v : l) v = std::max(v, 0.0);
  return shannon_entropy(std::span<const double>(l.data(), l.size())) - 1.0;
}

double bell_diagonal_closed_form(const BellDiagonalParams& c) {
  const double c_min = std::min({std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)});
  return f_scalar(c_min) - f_triple(c);
}

}  // namespace qcorr
