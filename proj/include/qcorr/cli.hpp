#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcorr/core.hpp"

namespace qcorr {

// Exit codes: 0 success, 1 some verification case failed, 2 usage, schema
// or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

// "2x3" -> {2, 3}. Throws BadSpec.
Dims parse_dims(const std::string& text);

}  // namespace qcorr
