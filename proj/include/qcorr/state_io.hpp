#pragma once

// JSON state files:
//
//   {"kind": "density", "dims": [2, 2], "matrix": [[re, im], ...]}
//   {"kind": "pure",    "dims": [2, 2], "amplitudes": [[re, im], ...]}
//
// Entries are row-major. Numbers are written with up to 17 significant
// digits, so serialize -> parse reproduces every double exactly.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qcorr/states.hpp"

namespace qcorr {

nlohmann::json state_to_json(const AnyState& state);

// Throws SchemaError naming the offending field, or InvariantError when the
// parsed matrix or vector fails validation.
AnyState state_from_json(const nlohmann::json& doc);

std::string serialize_state(const AnyState& state);
void serialize_state(const AnyState& state, const std::filesystem::path& path);

AnyState parse_state(const std::string& text);
AnyState parse_state_file(const std::filesystem::path& path);

}  // namespace qcorr
