#pragma once

#include <string>

namespace cpc::cli {

// Runs one subcommand of the tool and writes its output file atomically.
// Exit codes: 0 success, 1 runtime/numerical failure (machine-readable error
// object on stderr), 2 usage error.
int dispatch(int argc, const char* const* argv);

// Default directory for output files: $CPCSIM_OUTPUT_DIR or the working
// directory.
std::string default_output_dir();

}  // namespace cpc::cli
