#pragma once

#include <ostream>

namespace edgebench {

/// Entry point of the `edgebench` tool: run, compare, cost, validate,
/// charts. Returns the process exit status: 0 on success, 1 when a run
/// completed but some message never reached a blob, 2 on any error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edgebench
