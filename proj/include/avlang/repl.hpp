#pragma once
// Interactive session: reads declarations and directives line by line,
// keeping clauses and machine state across inputs. All prompts, acks, and
// diagnostics go to `err`; only program output goes to `out`, so piping a
// file through the session writes the same bytes a batch run would.

#include <cstdint>
#include <iosfwd>

#include "avlang/interp.hpp"

namespace avlang {

struct ReplOptions {
  std::uint64_t max_steps = kDefaultMaxSteps;  // per directive
  bool show_trace = false;                     // initial :trace setting
  TraceVerbosity verbosity = TraceVerbosity::Default;
};

// Runs until :quit or end of input. Returns the process exit code (0).
int run_repl(std::istream& in, std::ostream& out, std::ostream& err, const ReplOptions& options);

}  // namespace avlang
