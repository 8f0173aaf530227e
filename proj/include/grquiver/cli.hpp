#pragma once

namespace grq::cli {

// full command-line driver (subcommands: catalog, measure, segments, verify);
// returns the process exit code: 0 ok, 1 property failure, 2 invalid input,
// 3 budget exhaustion / undecidable within budget
int run(int argc, const char* const* argv);

}  // namespace grq::cli
