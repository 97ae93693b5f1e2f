#pragma once

#include <string>

#include "shapestat/sample.hpp"

namespace shapestat {

// Single-column CSV (optional `value` header, blank lines skipped, LF or
// CRLF). Errors carry the offending line number.
Sample read_samples(const std::string& path);

// Parses and dispatches a full command line. Returns the process exit code:
// 0 success, 2 input error, 3 numerical failure. Errors are reported as a
// JSON object on stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace shapestat
