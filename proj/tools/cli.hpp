#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primecert::cli {

struct RunOutcome {
  int exit_code = 0;
  std::string report_path;  // file written via --out, empty otherwise
};

// Runs one command line (program name excluded) against the given
// streams, so tests can drive the tool in-process. Exit codes: 0 the
// requested property was established / input accepted / checks passed;
// 1 established false, rejected, or a violation found; 2 undecided
// within the configured budget; 3 usage or input error.
RunOutcome run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primecert::cli
