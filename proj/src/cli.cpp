#include "qcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcorr/state_io.hpp"
#include "qcorr/suites.hpp"

namespace qcorr {

namespace {

const std::vector<std::string> kQuantities = {"discord", "discord-mu", "deficit", "deficit-mu", "nre", "s-chi"};
const std::vector<std::string> kSuites = {"theorem1", "identity", "bell", "tradeoff", "zero-iff", "monotone", "all"};
const std::vector<std::string> kKinds = {"ginibre", "haar", "cq", "bell"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::SchemaError, "cannot open " + path + " for writing");
  f << text;
}

nlohmann::json measurement_json(const ProjectiveMeasurement& m) {
  nlohmann::json basis = nlohmann::json::array();
  for (Eigen::Index c = 0; c < m.basis().cols(); ++c) {
    nlohmann::json vec = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.basis().rows(); ++r) vec.push_back({m.basis()(r, c).real(), m.basis()(r, c).imag()});
    basis.push_back(vec);
  }
  return basis;
}

struct ComputeArgs {
  std::string quantity;
  std::string state_path;
  std::string measured = "B";
  std::size_t restarts = OptimizerConfig{}.restarts;
  std::uint64_t seed = 0;
  std::string json_path;
};

int run_compute(const ComputeArgs& a, std::ostream& out) {
  AnyState state = parse_state_file(a.state_path);
  const DensityMatrix rho =
      std::holds_alternative<DensityMatrix>(state) ? std::get<DensityMatrix>(state) : std::get<PureStateVector>(state).to_density();
  OptimizerConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;

  MeasureResult r;
  if (a.quantity == "discord") r = discord_one_way(rho, cfg);
  else if (a.quantity == "discord-mu") r = unlocalizable_discord(rho, cfg);
  else if (a.quantity == "deficit") r = deficit_one_way(rho, cfg);
  else if (a.quantity == "deficit-mu") r = unlocalizable_deficit(rho, cfg);
  else if (a.quantity == "nre") r = relative_entropy_nonlocality(rho, cfg);
  else r = unlocalizable_entanglement(rho, a.measured == "A" ? Party::A : Party::B, cfg);

  out << a.quantity << " = " << fmt(r.value) << '\n';
  for (const auto& t : r.components) {
    out << "  " << (t.coefficient < 0 ? "- " : "+ ") << t.name << " = " << fmt(t.value) << '\n';
  }
  if (r.opt) {
    out << "  evaluations = " << r.opt->evaluations << (r.opt->converged ? ", converged" : ", not converged") << '\n';
  }

  if (!a.json_path.empty()) {
    nlohmann::json doc;
    doc["quantity"] = a.quantity;
    doc["value"] = r.value;
    doc["state"] = a.state_path;
    doc["measured"] = a.measured;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& t : r.components) comps.push_back({{"name", t.name}, {"value", t.value}, {"coefficient", t.coefficient}});
    doc["components"] = comps;
    doc["config"] = {{"restarts", cfg.restarts},
                     {"max_iterations", cfg.max_iterations},
                     {"objective_tolerance", cfg.objective_tolerance},
                     {"simplex_scale", cfg.simplex_scale},
                     {"seed", cfg.seed},
                     {"qubit_grid", cfg.qubit_grid}};
    if (r.opt) {
      doc["evaluations"] = r.opt->evaluations;
      doc["converged"] = r.opt->converged;
      doc["argmeasurement"] = measurement_json(r.opt->argmeasurement);
    }
    write_file(a.json_path, doc.dump(2) + "\n");
  }
  return kExitOk;
}

struct ScanArgs {
  double step = 0.0;
  std::optional<double> c3;
  std::string csv_path;
  bool numeric = false;
  std::size_t restarts = OptimizerConfig{}.restarts;
  std::uint64_t seed = 0;
};

std::vector<double> axis(double step) {
  std::vector<double> values;
  const auto count = static_cast<long>(std::floor(2.0 / step + 1e-9));
  for (long k = 0; k <= count; ++k) values.push_back(-1.0 + static_cast<double>(k) * step);
  return values;
}

int run_scan(const ScanArgs& a, std::ostream& out) {
  if (!(a.step > 0.0) || a.step > 2.0) throw Error(ErrorCode::BadSpec, "--step must be in (0, 2]");
  OptimizerConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;

  std::ostringstream csv;
  csv << "c1,c2,c3,closed_form";
  if (a.numeric) csv << ",deficit_mu,discord_mu";
  csv << '\n';
  const std::vector<double> grid = axis(a.step);
  const std::vector<double> c3_values = a.c3 ? std::vector<double>{*a.c3} : grid;
  std::size_t rows = 0;
  for (double c1 : grid) {
    for (double c2 : grid) {
      for (double c3 : c3_values) {
        const BellDiagonalParams c{c1, c2, c3};
        if (!c.is_valid()) continue;
        csv << fmt(c1) << ',' << fmt(c2) << ',' << fmt(c3) << ',' << fmt(bell_diagonal_closed_form(c));
        if (a.numeric) {
          const DensityMatrix rho = bell_diagonal(c);
          csv << ',' << fmt(unlocalizable_deficit(rho, cfg).value) << ',' << fmt(unlocalizable_discord(rho, cfg).value);
        }
        csv << '\n';
        ++rows;
      }
    }
  }
  if (a.csv_path.empty()) {
    out << csv.str();
  } else {
    write_file(a.csv_path, csv.str());
    out << "wrote " << rows << " rows to " << a.csv_path << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::size_t samples = 0;
  std::string dims;
  std::uint64_t seed = 0;
  std::string json_path;
  std::string csv_path;
  std::string family = "ginibre";
  std::size_t channels = 1;
  std::size_t restarts = OptimizerConfig{}.restarts;
  std::uint64_t opt_seed = 0;
  unsigned threads = 0;
};

// Adapts the requested dims to what each suite samples.
Dims dims_for(const std::string& suite, const Dims& dims) {
  if (suite == "tradeoff") {
    if (dims.size() == 2) return {dims[0], dims[1], dims[0] * dims[1]};
    return dims;
  }
  if (dims.size() == 3) return {dims[0], dims[1]};
  return dims;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  const Dims dims = parse_dims(a.dims);
  if (dims.size() < 2 || dims.size() > 3) throw Error(ErrorCode::BadSpec, "--dims needs two or three factors");
  SuiteOptions opt;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.cfg.restarts = a.restarts;
  opt.cfg.seed = a.opt_seed;
  opt.channels_per_state = a.channels;
  opt.threads = a.threads;
  opt.family = a.family == "bell" ? Family::Bell : a.family == "cq" ? Family::ClassicalQuantum : Family::Ginibre;

  std::vector<std::string> names;
  if (a.suite == "all") {
    names.assign(kSuites.begin(), kSuites.end() - 1);
  } else {
    names.push_back(a.suite);
  }

  std::vector<SuiteReport> reports;
  for (const auto& name : names) {
    SuiteOptions o = opt;
    o.dims = dims_for(name, dims);
    reports.push_back(run_suite(name, o));
    write_text(out, reports.back());
  }

  if (!a.json_path.empty()) {
    nlohmann::json doc;
    if (reports.size() == 1) {
      doc = to_json(reports.front());
    } else {
      doc["suites"] = nlohmann::json::array();
      for (const auto& r : reports) doc["suites"].push_back(to_json(r));
    }
    write_file(a.json_path, doc.dump(2) + "\n");
  }
  if (!a.csv_path.empty()) {
    std::ostringstream csv;
    for (std::size_t i = 0; i < reports.size(); ++i) write_csv(csv, reports[i], i == 0);
    write_file(a.csv_path, csv.str());
  }
  const bool all_ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.ok(); });
  return all_ok ? kExitOk : kExitVerificationFailed;
}

struct RandomArgs {
  std::string kind;
  std::string dims = "2x2";
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_random(const RandomArgs& a, std::ostream& out) {
  RandomSpec spec;
  spec.seed = a.seed;
  spec.dims = parse_dims(a.dims);
  if (a.kind == "ginibre") spec.kind = StateKind::GinibreMixed;
  else if (a.kind == "haar") spec.kind = StateKind::HaarPure;
  else if (a.kind == "cq") spec.kind = StateKind::ClassicalQuantum;
  else spec.kind = StateKind::BellDiagonalUniform;
  const AnyState state = random_state(spec);
  serialize_state(state, a.out_path);
  out << "wrote " << to_string(spec.kind) << " state to " << a.out_path << '\n';
  return kExitOk;
}

}  // namespace

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::BadSpec, "bad dims '" + text + "', expected e.g. 2x3");
    }
    const unsigned long v = std::stoul(part);
    if (v == 0) throw Error(ErrorCode::BadSpec, "bad dims '" + text + "': zero dimension");
    dims.push_back(v);
  }
  if (dims.empty() || text.back() == 'x') throw Error(ErrorCode::BadSpec, "bad dims '" + text + "', expected e.g. 2x3");
  return dims;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-way quantum correlation measures and their verification suites", "qcorr"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Evaluate one measure on a state file");
  c->add_option("--quantity", compute.quantity, "Measure to compute")->required()->check(CLI::IsMember(kQuantities));
  c->add_option("--state", compute.state_path, "State JSON file")->required();
  c->add_option("--measured", compute.measured, "Measured party for s-chi")->check(CLI::IsMember({"A", "B"}));
  c->add_option("--restarts", compute.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  c->add_option("--seed", compute.seed, "Optimizer seed");
  c->add_option("--json", compute.json_path, "Write the result as JSON");

  ScanArgs scan;
  auto* s = app.add_subcommand("scan-bell", "Closed form over a grid of Bell-diagonal states");
  s->add_option("--step", scan.step, "Grid step for c1, c2 (and c3)")->required();
  s->add_option("--c3", scan.c3, "Fix c3 instead of scanning it");
  s->add_option("--csv", scan.csv_path, "Write CSV here instead of stdout");
  s->add_flag("--numeric", scan.numeric, "Add optimizer columns");
  s->add_option("--restarts", scan.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  s->add_option("--seed", scan.seed, "Optimizer seed");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("--suite", verify.suite, "Suite name")->required()->check(CLI::IsMember(kSuites));
  v->add_option("--samples", verify.samples, "Samples per suite")->required()->check(CLI::PositiveNumber);
  v->add_option("--dims", verify.dims, "Dimensions, e.g. 2x2 or 2x2x4")->required();
  v->add_option("--seed", verify.seed, "Sampling seed")->required();
  v->add_option("--json", verify.json_path, "Write the report as JSON");
  v->add_option("--csv", verify.csv_path, "Write per-case rows as CSV");
  v->add_option("--family", verify.family, "State family for theorem1")->check(CLI::IsMember({"ginibre", "bell", "cq"}));
  v->add_option("--channels", verify.channels, "Channels per state for monotone")->check(CLI::PositiveNumber);
  v->add_option("--restarts", verify.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  v->add_option("--opt-seed", verify.opt_seed, "Optimizer seed");
  v->add_option("--threads", verify.threads, "Worker threads (0 = all cores)");

  RandomArgs random;
  auto* r = app.add_subcommand("random", "Sample a random state into a file");
  r->add_option("--kind", random.kind, "State family")->required()->check(CLI::IsMember(kKinds));
  r->add_option("--dims", random.dims, "Dimensions, e.g. 2x3");
  r->add_option("--seed", random.seed, "Seed")->required();
  r->add_option("--out", random.out_path, "Output file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (c->parsed()) return run_compute(compute, out);
    if (s->parsed()) return run_scan(scan, out);
    if (v->parsed()) return run_verify(verify, out);
    return run_random(random, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace qcorr
