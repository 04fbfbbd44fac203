#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcorr/cli.hpp"
#include "qcorr/error.hpp"
#include "qcorr/state_io.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("dims parsing") {
    CHECK(parse_dims("2x3") == Dims{2, 3});
    CHECK(parse_dims("2x2x4") == Dims{2, 2, 4});
    CHECK_THROWS_AS(parse_dims("2y2"), Error);
    CHECK_THROWS_AS(parse_dims("2x"), Error);
    CHECK_THROWS_AS(parse_dims("0x2"), Error);
    CHECK_THROWS_AS(parse_dims(""), Error);
  }

  TEST_CASE("compute on a Bell state file") {
    const auto path = temp_file("qcorr_cli_bell.json");
    serialize_state(AnyState{bell_state_phi_plus()}, path);
    const auto r = run({"compute", "--quantity", "deficit-mu", "--state", path.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("deficit-mu = 1", 0) == 0);
    CHECK(r.out.find("max S(dephased rho_AB)") != std::string::npos);

    const auto json = temp_file("qcorr_cli_compute.json");
    CHECK(run({"compute", "--quantity", "s-chi", "--state", path.string(), "--measured", "A", "--json", json.string()})
              .code == kExitOk);
    const auto doc = nlohmann::json::parse(slurp(json));
    CHECK(doc["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(doc["measured"] == "A");
    CHECK(doc.contains("argmeasurement"));
    std::filesystem::remove(path);
    std::filesystem::remove(json);
  }

  TEST_CASE("pure state files are accepted by compute") {
    const auto path = temp_file("qcorr_cli_pure.json");
    serialize_state(random_state({3, {2, 2}, StateKind::HaarPure, std::nullopt}), path);
    CHECK(run({"compute", "--quantity", "discord", "--state", path.string(), "--restarts", "4"}).code == kExitOk);
    std::filesystem::remove(path);
  }

  TEST_CASE("verify identity suite succeeds") {
    const auto json = temp_file("qcorr_cli_identity.json");
    const auto csv = temp_file("qcorr_cli_identity.csv");
    const auto r = run({"verify", "--suite", "identity", "--samples", "100", "--dims", "2x2", "--seed", "1", "--json",
                        json.string(), "--csv", csv.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("100/100 passed") != std::string::npos);
    CHECK(nlohmann::json::parse(slurp(json))["passes"] == 100);
    const std::string text = slurp(csv);
    CHECK(text.rfind("case_id,lhs,rhs,residual,tolerance,passed\nidentity/0000/dephasing-identity,", 0) == 0);
    std::filesystem::remove(json);
    std::filesystem::remove(csv);
  }

  TEST_CASE("verify exits 1 when a case fails") {
    // Classical-quantum states with a rotated basis give nonzero unlocalizable
    // measures, so the forward cases of zero-iff fail.
    const auto r = run({"verify", "--suite", "zero-iff", "--samples", "2", "--dims", "2x2", "--seed", "1", "--restarts", "4"});
    CHECK(r.code == kExitVerificationFailed);
    CHECK(r.out.find("FAIL") != std::string::npos);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({"compute", "--quantity", "bogus", "--state", "x.json"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"verify", "--suite", "identity", "--samples", "1", "--dims", "2q2", "--seed", "1"}).code == kExitUsage);
    CHECK(run({"verify", "--suite", "tradeoff", "--samples", "1", "--dims", "2x2x2x2", "--seed", "1"}).code ==
          kExitUsage);
    CHECK(run({"scan-bell", "--step", "0"}).code == kExitUsage);
    const auto missing = run({"compute", "--quantity", "discord", "--state", "/nonexistent/state.json"});
    CHECK(missing.code == kExitUsage);
    CHECK(missing.err.find("SchemaError") != std::string::npos);
  }

  TEST_CASE("invalid state file exits 2") {
    const auto path = temp_file("qcorr_cli_bad.json");
    std::ofstream(path) << R"({"kind": "density", "dims": [2], "matrix": [[1,0],[0,0],[0,0],[0.1,0]]})";
    const auto r = run({"compute", "--quantity", "discord", "--state", path.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("InvariantError") != std::string::npos);
    std::filesystem::remove(path);
  }

  TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verify") != std::string::npos);
  }

  TEST_CASE("scan-bell closed-form grid") {
    const auto r = run({"scan-bell", "--step", "0.5", "--c3", "0"});
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "c1,c2,c3,closed_form");
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    // |c1| + |c2| <= 1 on the 0.5 grid: 5 + 6 + 2 = 13 points.
    CHECK(rows == 13);
  }

  TEST_CASE("scan-bell numeric columns") {
    const auto csv = temp_file("qcorr_cli_scan.csv");
    CHECK(run({"scan-bell", "--step", "1", "--c3", "0", "--numeric", "--restarts", "2", "--csv", csv.string()}).code ==
          kExitOk);
    const std::string text = slurp(csv);
    CHECK(text.rfind("c1,c2,c3,closed_form,deficit_mu,discord_mu\n", 0) == 0);
    std::filesystem::remove(csv);
  }

  TEST_CASE("random writes a parseable state") {
    for (const std::string kind : {"ginibre", "haar", "cq", "bell"}) {
      const auto path = temp_file("qcorr_cli_random_" + kind + ".json");
      CHECK(run({"random", "--kind", kind, "--dims", "2x2", "--seed", "3", "--out", path.string()}).code == kExitOk);
      CHECK_NOTHROW(parse_state_file(path));
      const std::string first = slurp(path);
      run({"random", "--kind", kind, "--dims", "2x2", "--seed", "3", "--out", path.string()});
      CHECK(slurp(path) == first);
      std::filesystem::remove(path);
    }
  }
}
