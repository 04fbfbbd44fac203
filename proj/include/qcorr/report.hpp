#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qcorr {

struct CaseResult {
  std::string case_id;
  std::string inputs_digest;  // FNV-1a 64 of the serialized inputs, hex
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  // |lhs - rhs| <= tolerance.
  static CaseResult equality(std::string id, std::string digest, double lhs, double rhs, double tolerance);
  // lhs >= rhs - tolerance; residual is max(0, rhs - lhs).
  static CaseResult at_least(std::string id, std::string digest, double lhs, double rhs, double tolerance);
  // lhs <= rhs + tolerance; residual is max(0, lhs - rhs).
  static CaseResult at_most(std::string id, std::string digest, double lhs, double rhs, double tolerance);
};

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t passes = 0;
  std::vector<CaseResult> results;   // every case, in case order
  std::vector<CaseResult> failures;  // the subset with passed == false
  std::vector<std::string> inconclusive;
  double max_violation = 0.0;  // max(0, residual - tolerance) over cases
  double worst_margin = 0.0;   // min(tolerance - residual) over cases
  nlohmann::json config_echo;

  bool ok() const { return failures.empty(); }
};

// Fills counts, failures and the violation summary from `results`.
SuiteReport make_report(std::string suite, std::vector<CaseResult> results, nlohmann::json config_echo,
                        std::vector<std::string> inconclusive = {});

std::string fnv1a_hex(std::string_view data);

nlohmann::json to_json(const CaseResult& c);
nlohmann::json to_json(const SuiteReport& r);

// Columns: case_id,lhs,rhs,residual,tolerance,passed. `with_header` controls
// the header line so several suites can share one file.
void write_csv(std::ostream& out, const SuiteReport& r, bool with_header = true);
void write_text(std::ostream& out, const SuiteReport& r);

}  // namespace qcorr
