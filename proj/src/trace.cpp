#include "avlang/trace.hpp"

#include <utility>

#include "avlang/parser.hpp"

namespace avlang {

using detail::Overload;

TraceLog record(TraceLog log, TraceEvent event) {
  if (const EvInstantiated* inst = std::get_if<EvInstantiated>(&event.data)) {
    if (inst->origin == Visibility::Blind)
      throw InternalFault("blind binder '" + inst->name + "' recorded as instantiated");
  }
  log.events.push_back(std::move(event));
  return log;
}

std::string render_trace(const TraceLog& log, TraceVerbosity verbosity) {
  if (verbosity == TraceVerbosity::Off) return {};
  std::string out;
  for (const TraceEvent& ev : log.events) {
    bool standard = std::holds_alternative<EvInstantiated>(ev.data) ||
                    std::holds_alternative<EvAssigned>(ev.data) ||
                    std::holds_alternative<EvPrinted>(ev.data);
    if (verbosity == TraceVerbosity::Default && !standard) continue;
    std::string line = std::visit(
        Overload{
            [](const EvCallEnter& e) { return "call " + render_call(e.call); },
            [](const EvMatchedClause& e) {
              return "matched clause " + std::to_string(e.clause_index);
            },
            [](const EvInstantiated& e) { return e.name + " := " + render_term(e.value); },
            [](const EvAssigned& e) { return e.name + " := " + render_term(e.value); },
            [](const EvPrinted& e) { return "print " + e.text; },
            [](const EvFailedBranch& e) {
              return "failed clause " + std::to_string(e.clause_index);
            },
        },
        ev.data);
    out.append(static_cast<std::size_t>(ev.depth) * 2, ' ');
    out += line;
    out += '\n';
  }
  return out;
}

std::string printed_output(const TraceLog& log) {
  std::string out;
  for (const TraceEvent& ev : log.events)
    if (const EvPrinted* p = std::get_if<EvPrinted>(&ev.data)) {
      out += p->text;
      out += '\n';
    }
  return out;
}

}  // namespace avlang
