#include "qcorr/suites.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "qcorr/state_io.hpp"

namespace qcorr {

namespace {

using CaseList = std::vector<CaseResult>;

// Runs body(i) for i in [0, count) on a pool of threads and returns the
// per-index results in index order. The first exception (by index) is
// rethrown after all workers finish.
template <typename Body>
std::vector<CaseList> parallel_cases(std::size_t count, unsigned threads, Body&& body) {
  std::vector<CaseList> out(count);
  std::vector<std::exception_ptr> errors(count);
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

CaseList flatten(std::vector<CaseList> nested) {
  CaseList flat;
  for (auto& list : nested) {
    for (auto& c : list) flat.push_back(std::move(c));
  }
  return flat;
}

std::string sample_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", i);
  return buf;
}

std::string digest(const DensityMatrix& rho, std::string_view extra = {}) {
  std::string text = serialize_state(rho);
  text.append(extra);
  return fnv1a_hex(text);
}

std::string measurement_text(const ProjectiveMeasurement& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.basis().rows(); ++i) {
    for (Eigen::Index j = 0; j < m.basis().cols(); ++j) arr.push_back({m.basis()(i, j).real(), m.basis()(i, j).imag()});
  }
  return arr.dump();
}

std::string channel_text(const ChannelOnB& ch) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : ch.kraus()) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) arr.push_back({v(i, j).real(), v(i, j).imag()});
    }
  }
  return arr.dump();
}

void require_bipartite_dims(const Dims& dims, std::string_view suite) {
  if (dims.size() != 2) {
    throw Error(ErrorCode::BadSpec, std::string(suite) + " suite needs bipartite dims");
  }
}

DensityMatrix sample_state(Family family, const Dims& dims, std::uint64_t seed) {
  switch (family) {
    case Family::Ginibre: return random_density({seed, dims, StateKind::GinibreMixed, std::nullopt});
    case Family::Bell: return random_density({seed, Dims{2, 2}, StateKind::BellDiagonalUniform, std::nullopt});
    case Family::ClassicalQuantum: return random_density({seed, dims, StateKind::ClassicalQuantum, std::nullopt});
  }
  throw Error(ErrorCode::BadSpec, "unknown family");
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Ginibre: return "ginibre";
    case Family::Bell: return "bell";
    case Family::ClassicalQuantum: return "cq";
  }
  return "unknown";
}

nlohmann::json SuiteOptions::echo(std::string_view suite) const {
  return {{"suite", suite},
          {"samples", samples},
          {"dims", dims},
          {"seed", seed},
          {"family", to_string(family)},
          {"channels_per_state", channels_per_state},
          {"max_kraus", max_kraus},
          {"optimizer",
           {{"restarts", cfg.restarts},
            {"max_iterations", cfg.max_iterations},
            {"objective_tolerance", cfg.objective_tolerance},
            {"simplex_scale", cfg.simplex_scale},
            {"seed", cfg.seed},
            {"qubit_grid", cfg.qubit_grid}}}};
}

SuiteReport run_theorem1_suite(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::BadSpec, "samples must be at least 1");
  if (opt.family != Family::Bell) require_bipartite_dims(opt.dims, "theorem1");
  auto nested = parallel_cases(opt.samples, opt.threads, [&](std::size_t i) {
    const DensityMatrix rho = sample_state(opt.family, opt.dims, derive_seed(opt.seed, i));
    const std::string id = sample_id(i);
    const std::string dg = digest(rho);
    const double deficit = deficit_one_way(rho, opt.cfg).value;
    const double deficit_mu = unlocalizable_deficit(rho, opt.cfg).value;
    const double discord = discord_one_way(rho, opt.cfg).value;
    const double discord_mu = unlocalizable_discord(rho, opt.cfg).value;
    const double local = single_system_max_deficit(partial_trace(rho, Party::B));
    return CaseList{
        CaseResult::at_least(id + "/deficit-mu>=deficit", dg, deficit_mu, deficit, kInequalitySlack),
        CaseResult::at_least(id + "/deficit-mu>=discord-mu", dg, deficit_mu, discord_mu, kInequalitySlack),
        CaseResult::at_least(id + "/local-deficit-mu>=deficit-discord", dg, local, deficit - discord, kInequalitySlack),
    };
  });
  return make_report("theorem1", flatten(std::move(nested)), opt.echo("theorem1"));
}

SuiteReport run_identity_suite(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::BadSpec, "samples must be at least 1");
  require_bipartite_dims(opt.dims, "identity");
  auto nested = parallel_cases(opt.samples, opt.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opt.seed, i);
    const DensityMatrix rho = random_density({seed, opt.dims, StateKind::GinibreMixed, std::nullopt});
    Rng rng(derive_seed(seed, 1));
    const auto m = ProjectiveMeasurement::from_basis(haar_unitary(opt.dims[1], rng));
    const OutcomeEnsemble ens = outcome_ensemble(rho, m, Party::B);
    const double lhs = ens.average_conditional_entropy();
    const double rhs = von_neumann_entropy(dephase(rho, m, Party::B)) -
                       von_neumann_entropy(dephase_local(partial_trace(rho, Party::B), m));
    return CaseList{CaseResult::equality(sample_id(i) + "/dephasing-identity", digest(rho, measurement_text(m)), lhs, rhs, kIdentityTol)};
  });
  return make_report("identity", flatten(std::move(nested)), opt.echo("identity"));
}

SuiteReport run_bell_crosscheck_suite(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::BadSpec, "samples must be at least 1");
  auto nested = parallel_cases(opt.samples, opt.threads, [&](std::size_t i) {
    Rng rng(derive_seed(opt.seed, i));
    const BellDiagonalParams c = random_bell_params(rng);
    const DensityMatrix rho = bell_diagonal(c);
    const std::string id = sample_id(i);
    const std::string dg = digest(rho);
    const double closed = bell_diagonal_closed_form(c);
    const double deficit_mu = unlocalizable_deficit(rho, opt.cfg).value;
    const double discord_mu = unlocalizable_discord(rho, opt.cfg).value;
    return CaseList{
        CaseResult::equality(id + "/deficit-mu=closed-form", dg, deficit_mu, closed, kClosedFormTol),
        CaseResult::equality(id + "/discord-mu=closed-form", dg, discord_mu, closed, kClosedFormTol),
        CaseResult::equality(id + "/deficit-mu=discord-mu", dg, deficit_mu, discord_mu, 2 * kClosedFormTol),
    };
  });
  auto echo = opt.echo("bell");
  echo["dims"] = Dims{2, 2};
  return make_report("bell", flatten(std::move(nested)), echo);
}

SuiteReport run_tradeoff_suite(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::BadSpec, "samples must be at least 1");
  if (opt.dims.size() != 3) throw Error(ErrorCode::BadSpec, "tradeoff suite needs tripartite dims");
  const std::size_t ab[] = {0, 1};
  const std::size_t bc[] = {1, 2};
  const std::size_t b_only[] = {1};
  auto nested = parallel_cases(opt.samples, opt.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opt.seed, i);
    const std::string id = sample_id(i);
    CaseList cases;

    const AnyState state = random_state({seed, opt.dims, StateKind::HaarPure, std::nullopt});
    const auto& psi = std::get<PureStateVector>(state);
    const DensityMatrix rho_ab = reduced_state(psi, ab);
    const DensityMatrix rho_bc = reduced_state(psi, bc);
    const double s_b = von_neumann_entropy(reduced_state(psi, b_only));
    const double discord_mu = unlocalizable_discord(rho_ab, opt.cfg).value;
    // In rho_BC the measured party B is the first factor.
    const double s_chi = unlocalizable_entanglement(rho_bc, Party::A, opt.cfg).value;
    cases.push_back(CaseResult::equality(id + "/haar/discord-mu=S(B)-S_chi", fnv1a_hex(serialize_state(state)),
                                         discord_mu, s_b - s_chi, kInequalitySlack));

    Rng rng(derive_seed(seed, 1));
    const DensityMatrix bell = bell_diagonal(random_bell_params(rng));
    const PureStateVector lifted = purify(bell);
    const DensityMatrix lifted_bc = reduced_state(lifted, bc);
    const double lifted_s_b = von_neumann_entropy(reduced_state(lifted, b_only));
    const double deficit_mu = unlocalizable_deficit(bell, opt.cfg).value;
    const double lifted_s_chi = unlocalizable_entanglement(lifted_bc, Party::A, opt.cfg).value;
    cases.push_back(CaseResult::equality(id + "/bell-lift/deficit-mu=S(B)-S_chi", digest(bell), deficit_mu,
                                         lifted_s_b - lifted_s_chi, kInequalitySlack));
    return cases;
  });
  return make_report("tradeoff", flatten(std::move(nested)), opt.echo("tradeoff"));
}

SuiteReport run_zero_iff_suite(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::BadSpec, "samples must be at least 1");
  require_bipartite_dims(opt.dims, "zero-iff");
  CaseList anchors;
  {
    const std::size_t side = product(opt.dims);
    const DensityMatrix mixed = DensityMatrix::validate(identity(side) / static_cast<double>(side), opt.dims);
    const std::string dg = digest(mixed);
    anchors.push_back(CaseResult::at_most("anchor/maximally-mixed/deficit-mu", dg,
                                          unlocalizable_deficit(mixed, opt.cfg).value, 0.0, 1e-6));
    anchors.push_back(CaseResult::at_most("anchor/maximally-mixed/discord-mu", dg,
                                          unlocalizable_discord(mixed, opt.cfg).value, 0.0, 1e-6));
    if (opt.dims == Dims{2, 2}) {
      const DensityMatrix bell = bell_state_phi_plus();
      const std::string bdg = digest(bell);
      anchors.push_back(
          CaseResult::equality("anchor/bell/deficit-mu", bdg, unlocalizable_deficit(bell, opt.cfg).value, 1.0, kZeroTol));
      anchors.push_back(
          CaseResult::equality("anchor/bell/discord-mu", bdg, unlocalizable_discord(bell, opt.cfg).value, 1.0, kZeroTol));
    }
  }

  std::vector<std::string> inconclusive_flags(opt.samples);
  auto nested = parallel_cases(opt.samples, opt.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opt.seed, i);
    const std::string id = sample_id(i);
    CaseList cases;

    // Forward direction. Odd samples use a Haar-rotated classical basis.
    DensityMatrix cq = random_density({seed, opt.dims, StateKind::ClassicalQuantum, std::nullopt});
    if (i % 2 == 1) {
      Rng rng(derive_seed(seed, 1));
      cq = rotate_B(cq, haar_unitary(opt.dims[1], rng));
    }
    const std::string dg = digest(cq);
    cases.push_back(CaseResult::at_most(id + "/cq/deficit-mu", dg, unlocalizable_deficit(cq, opt.cfg).value, 0.0, kZeroTol));
    cases.push_back(CaseResult::at_most(id + "/cq/discord-mu", dg, unlocalizable_discord(cq, opt.cfg).value, 0.0, kZeroTol));

    // Threshold probe on a generic full-rank state.
    const DensityMatrix generic = random_density({derive_seed(seed, 2), opt.dims, StateKind::GinibreMixed, std::nullopt});
    const double discord_mu = unlocalizable_discord(generic, opt.cfg).value;
    if (discord_mu > kProbeDiscordThreshold) {
      const double deficit_mu = unlocalizable_deficit(generic, opt.cfg).value;
      cases.push_back(CaseResult::at_least(id + "/probe/deficit-mu>threshold", digest(generic), deficit_mu,
                                           kProbeDeficitThreshold, 0.0));
    } else {
      inconclusive_flags[i] = id + "/probe";
    }
    return cases;
  });

  CaseList all = std::move(anchors);
  for (auto& c : flatten(std::move(nested))) all.push_back(std::move(c));
  std::vector<std::string> inconclusive;
  for (auto& s : inconclusive_flags) {
    if (!s.empty()) inconclusive.push_back(std::move(s));
  }
  return make_report("zero-iff", std::move(all), opt.echo("zero-iff"), std::move(inconclusive));
}

SuiteReport run_monotonicity_suite(const SuiteOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::BadSpec, "samples must be at least 1");
  if (opt.channels_per_state == 0 || opt.max_kraus == 0) {
    throw Error(ErrorCode::BadSpec, "channels_per_state and max_kraus must be at least 1");
  }
  require_bipartite_dims(opt.dims, "monotone");
  auto nested = parallel_cases(opt.samples, opt.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opt.seed, i);
    const DensityMatrix rho = random_density({seed, opt.dims, StateKind::GinibreMixed, std::nullopt});
    const double before = unlocalizable_deficit(rho, opt.cfg).value;
    CaseList cases;
    for (std::size_t j = 0; j < opt.channels_per_state; ++j) {
      const std::size_t kraus = 1 + (i * opt.channels_per_state + j) % opt.max_kraus;
      const ChannelOnB ch = random_channel_on_B(opt.dims[1], kraus, derive_seed(seed, 1 + j));
      const std::string id = sample_id(i) + "." + std::to_string(j) + "/k" + std::to_string(kraus);
      const std::string dg = digest(rho, channel_text(ch));

      const double after = unlocalizable_deficit(apply_channel_on_B(rho, ch), opt.cfg).value;
      cases.push_back(CaseResult::at_most(id + "/channel", dg, after, before, kMonotoneSlack));

      double average = 0.0;
      for (const auto& branch : slocc_branches(rho, ch)) {
        if (!branch.negligible) average += branch.probability * unlocalizable_deficit(branch.state, opt.cfg).value;
      }
      cases.push_back(CaseResult::at_most(id + "/slocc-average", dg, average, before, kMonotoneSlack));
    }
    return cases;
  });
  return make_report("monotone", flatten(std::move(nested)), opt.echo("monotone"));
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& opt) {
  if (name == "theorem1") return run_theorem1_suite(opt);
  if (name == "identity") return run_identity_suite(opt);
  if (name == "bell") return run_bell_crosscheck_suite(opt);
  if (name == "tradeoff") return run_tradeoff_suite(opt);
  if (name == "zero-iff") return run_zero_iff_suite(opt);
  if (name == "monotone") return run_monotonicity_suite(opt);
  throw Error(ErrorCode::BadSpec, "unknown suite '" + std::string(name) + "'");
}

}  // namespace qcorr
