#include "qcorr/state_io.hpp"

#include <fstream>
#include <sstream>

namespace qcorr {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::SchemaError, "field '" + field + "': " + what);
}

json pair_array(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return out;
}

std::vector<Complex> read_complex_array(const json& doc, const std::string& field) {
  if (!doc.contains(field)) schema_error(field, "missing");
  const json& arr = doc.at(field);
  if (!arr.is_array()) schema_error(field, "must be an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      schema_error(field, "entry " + std::to_string(i) + " is not a [re, im] number pair");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

Dims read_dims(const json& doc) {
  if (!doc.contains("dims")) schema_error("dims", "missing");
  const json& arr = doc.at("dims");
  if (!arr.is_array() || arr.empty()) schema_error("dims", "must be a non-empty integer array");
  Dims dims;
  for (const auto& d : arr) {
    if (!d.is_number_integer() || d.get<long long>() < 1) schema_error("dims", "entries must be positive integers");
    dims.push_back(static_cast<std::size_t>(d.get<long long>()));
  }
  return dims;
}

}  // namespace

json state_to_json(const AnyState& state) {
  json doc;
  if (const auto* rho = std::get_if<DensityMatrix>(&state)) {
    doc["kind"] = "density";
    doc["dims"] = rho->dims();
    doc["matrix"] = pair_array(rho->matrix());
  } else {
    const auto& psi = std::get<PureStateVector>(state);
    doc["kind"] = "pure";
    doc["dims"] = psi.dims();
    doc["amplitudes"] = pair_array(psi.amplitudes());
  }
  return doc;
}

AnyState state_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("<root>", "must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) schema_error("kind", "missing or not a string");
  const std::string kind = doc.at("kind").get<std::string>();
  Dims dims = read_dims(doc);
  const std::size_t side = product(dims);

  try {
    if (kind == "density") {
      const auto entries = read_complex_array(doc, "matrix");
      if (entries.size() != side * side) {
        schema_error("matrix", "expected " + std::to_string(side * side) + " entries for dims, got " +
                                   std::to_string(entries.size()));
      }
      const auto n = static_cast<Eigen::Index>(side);
      ComplexMatrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i * n + j)];
      }
      return DensityMatrix::validate(m, std::move(dims));
    }
    if (kind == "pure") {
      const auto entries = read_complex_array(doc, "amplitudes");
      if (entries.size() != side) {
        schema_error("amplitudes", "expected " + std::to_string(side) + " entries for dims, got " +
                                       std::to_string(entries.size()));
      }
      ComplexVector v(static_cast<Eigen::Index>(side));
      for (std::size_t i = 0; i < side; ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
      return PureStateVector::validate(v, std::move(dims));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    throw Error(ErrorCode::InvariantError, e.what(), e.magnitude());
  }
  schema_error("kind", "must be \"density\" or \"pure\", got \"" + kind + "\"");
}

std::string serialize_state(const AnyState& state) { return state_to_json(state).dump(); }

void serialize_state(const AnyState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::SchemaError, "cannot open " + path.string() + " for writing");
  out << serialize_state(state) << '\n';
}

AnyState parse_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("not valid JSON: ") + e.what());
  }
  return state_from_json(doc);
}

AnyState parse_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

}  // namespace qcorr
