#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toda/forbidden.hpp"

namespace toda::cli {

/// Bumped whenever a JSON field is renamed, removed or changes meaning.
inline constexpr int schema_version = 1;

/// Environment variable holding the default for --format.
inline constexpr const char* format_env = "TODA_FORMAT";

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a domain error and 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Vortex configuration from its JSON text. Throws ParseError.
VortexConfig parse_vortex_config(const std::string& text);

}  // namespace toda::cli
