#include "qcorr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace qcorr {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CaseResult CaseResult::equality(std::string id, std::string digest, double lhs, double rhs, double tolerance) {
  const double residual = std::abs(lhs - rhs);
  return {std::move(id), std::move(digest), lhs, rhs, residual, tolerance, residual <= tolerance};
}

CaseResult CaseResult::at_least(std::string id, std::string digest, double lhs, double rhs, double tolerance) {
  const double residual = std::max(0.0, rhs - lhs);
  return {std::move(id), std::move(digest), lhs, rhs, residual, tolerance, residual <= tolerance};
}

CaseResult CaseResult::at_most(std::string id, std::string digest, double lhs, double rhs, double tolerance) {
  const double residual = std::max(0.0, lhs - rhs);
  return {std::move(id), std::move(digest), lhs, rhs, residual, tolerance, residual <= tolerance};
}

SuiteReport make_report(std::string suite, std::vector<CaseResult> results, nlohmann::json config_echo,
                        std::vector<std::string> inconclusive) {
  SuiteReport r;
  r.suite = std::move(suite);
  r.cases = results.size();
  r.worst_margin = results.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& c : results) {
    if (c.passed) {
      ++r.passes;
    } else {
      r.failures.push_back(c);
    }
    r.max_violation = std::max(r.max_violation, c.residual - c.tolerance);
    r.worst_margin = std::min(r.worst_margin, c.tolerance - c.residual);
  }
  r.results = std::move(results);
  r.inconclusive = std::move(inconclusive);
  r.config_echo = std::move(config_echo);
  return r;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const CaseResult& c) {
  return {{"case_id", c.case_id}, {"inputs_digest", c.inputs_digest}, {"lhs", c.lhs},
          {"rhs", c.rhs},         {"residual", c.residual},           {"tolerance", c.tolerance},
          {"passed", c.passed}};
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& c : r.results) results.push_back(to_json(c));
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& c : r.failures) failures.push_back(to_json(c));
  return {{"suite", r.suite},
          {"cases", r.cases},
          {"passes", r.passes},
          {"failures", failures},
          {"inconclusive", r.inconclusive},
          {"max_violation", r.max_violation},
          {"worst_margin", r.worst_margin},
          {"config", r.config_echo},
          {"results", results}};
}

void write_csv(std::ostream& out, const SuiteReport& r, bool with_header) {
  if (with_header) out << "case_id,lhs,rhs,residual,tolerance,passed\n";
  for (const auto& c : r.results) {
    out << r.suite << '/' << c.case_id << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ','
        << format_double(c.residual) << ',' << format_double(c.tolerance) << ',' << (c.passed ? "true" : "false")
        << '\n';
  }
}

void write_text(std::ostream& out, const SuiteReport& r) {
  out << "suite " << r.suite << ": " << r.passes << "/" << r.cases << " passed";
  if (!r.inconclusive.empty()) out << ", " << r.inconclusive.size() << " inconclusive";
  out << ", max violation " << format_double(r.max_violation) << ", worst margin " << format_double(r.worst_margin)
      << '\n';
  for (const auto& c : r.failures) {
    out << "  FAIL " << c.case_id << "  lhs=" << format_double(c.lhs) << " rhs=" << format_double(c.rhs)
        << " residual=" << format_double(c.residual) << " tol=" << format_double(c.tolerance)
        << " digest=" << c.inputs_digest << '\n';
  }
}

}  // namespace qcorr
