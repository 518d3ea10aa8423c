// Command-line front end: validate, describe, enumerate, verify, compare.
// Every command writes JSON lines.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyclicp/suites.hpp"

namespace cyclicp {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitInput = 2, kExitCap = 3 };

struct RunConfig {
  Caps caps;
  i64 collector_samples = 100000;
  i64 identity_samples = 10000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;  // empty: stdout
};

nlohmann::json to_json(const RunConfig& cfg);

/// Parses a vector given as a 10-element array or as an object with keys
/// p, m, n1, n2, o1, o2, o1p, o2p, u1, u2. Throws std::invalid_argument.
ParamVector parse_vector(const std::string& text);
nlohmann::json vector_json(const ParamVector& v);

/// argv[0] is the program name. Output goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclicp
