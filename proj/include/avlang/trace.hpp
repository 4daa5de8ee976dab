#pragma once
// Execution trace: what the engine records while deriving a goal, and how
// it is rendered. Only visible binders ever produce instantiation events.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "avlang/ast.hpp"

namespace avlang {

struct EvCallEnter {
  Call call;  // arguments resolved at entry
};
struct EvMatchedClause {
  std::size_t clause_index;
};
struct EvInstantiated {
  std::string name;
  Term value;
  Visibility origin = Visibility::Visible;  // recording a blind one is a fault
};
struct EvAssigned {
  std::string name;
  Term value;
};
struct EvPrinted {
  std::string text;
};
struct EvFailedBranch {
  std::size_t clause_index;
};

struct TraceEvent {
  std::variant<EvCallEnter, EvMatchedClause, EvInstantiated, EvAssigned, EvPrinted,
               EvFailedBranch>
      data;
  int depth = 0;  // call nesting depth, for rendering indentation
};

struct TraceLog {
  std::vector<TraceEvent> events;
};

// Appends one event, returning the extended log. Rejects an EvInstantiated
// with blind origin as an internal fault: the engine must never record one.
TraceLog record(TraceLog log, TraceEvent event);

enum class TraceVerbosity {
  Off,
  Default,  // instantiations, assignments, prints
  Verbose,  // everything, including call entries and clause choices
};

// One line per visible event, indented two spaces per depth.
std::string render_trace(const TraceLog& log, TraceVerbosity verbosity = TraceVerbosity::Default);

// Concatenated print output (each print ends with a newline).
std::string printed_output(const TraceLog& log);

}  // namespace avlang
