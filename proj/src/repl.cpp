#include "avlang/repl.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "avlang/parser.hpp"
#include "avlang/trace.hpp"

namespace avlang {

namespace {

struct Repl {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  Session session;
  bool show_trace;
  TraceVerbosity verbosity;

  Repl(std::istream& in, std::ostream& out, std::ostream& err, const ReplOptions& options)
      : in(in),
        out(out),
        err(err),
        session(options.max_steps, options.verbosity == TraceVerbosity::Verbose
                                       ? TraceDetail::Full
                                       : TraceDetail::Standard),
        show_trace(options.show_trace),
        verbosity(options.verbosity) {}

  int run() {
    std::string buffer;
    std::string line;
    for (;;) {
      err << (buffer.empty() ? "av> " : "..> ") << std::flush;
      if (!std::getline(in, line)) {
        if (!buffer.empty()) submit(buffer, true);
        err << '\n';
        return 0;
      }
      if (buffer.empty()) {
        std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        if (trimmed[0] == ':') {
          if (!meta(trimmed)) return 0;
          continue;
        }
      }
      buffer += line;
      buffer += '\n';
      if (!submit(buffer, false)) continue;  // waiting for the rest of a form
      buffer.clear();
    }
  }

  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  // Returns false on :quit.
  bool meta(const std::string& command) {
    if (command == ":quit") return false;
    if (command == ":state") {
      for (const auto& [name, value] : session.theta())
        err << name << " = " << display_term(value) << '\n';
      return true;
    }
    if (command == ":trace on" || command == ":trace off") {
      show_trace = command == ":trace on";
      err << "trace " << (show_trace ? "on" : "off") << '\n';
      return true;
    }
    err << "unknown command: " << command << " (try :trace on|off, :state, :quit)" << '\n';
    return true;
  }

  // Parses and runs the buffer. Returns false if the input is incomplete
  // and more lines should be read (never when `at_eof`).
  bool submit(const std::string& buffer, bool at_eof) {
    SourceUnit unit;
    try {
      unit = parse_unit(buffer);
    } catch (const ParseError& e) {
      if (e.incomplete && !at_eof) return false;
      err << "parse error: " << e.what() << '\n';
      return true;
    }
    for (const ClausePtr& clause : unit.declarations) {
      session.declare(clause);
      err << "ok" << '\n';
    }
    for (const GoalPtr& directive : unit.directives) run_directive(directive);
    return true;
  }

  void run_directive(const GoalPtr& directive) {
    try {
      DirectiveOutcome outcome = session.run_goal(directive);
      if (!outcome.succeeded) {
        err << "failure" << '\n';
        return;
      }
      out << outcome.output << std::flush;
      if (show_trace) err << render_trace(outcome.trace, verbosity);
      err << "ok" << '\n';
    } catch (const EvalError& e) {
      err << "eval error: " << e.what() << '\n';
    } catch (const BudgetExceededError& e) {
      err << "error: " << e.what() << '\n';
    }
  }
};

}  // namespace

int run_repl(std::istream& in, std::ostream& out, std::ostream& err,
             const ReplOptions& options) {
  Repl repl(in, out, err, options);
  return repl.run();
}

}  // namespace avlang
