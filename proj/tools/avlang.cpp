#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "avlang/interp.hpp"
#include "avlang/parser.hpp"
#include "avlang/repl.hpp"
#include "avlang/trace.hpp"

namespace {

struct TraceChoice {
  bool enabled = false;
  avlang::TraceVerbosity verbosity = avlang::TraceVerbosity::Off;
};

// --trace / --trace=default / --trace=verbose
void add_trace_option(CLI::App& cmd, std::string& value, CLI::Option*& opt) {
  opt = cmd.add_option("--trace", value, "write a derivation trace to stderr")
            ->expected(0, 1)
            ->check(CLI::IsMember({"default", "verbose"}));
}

TraceChoice trace_choice(const CLI::Option* opt, const std::string& value) {
  TraceChoice choice;
  if (opt->count() == 0) return choice;
  choice.enabled = true;
  choice.verbosity = value == "verbose" ? avlang::TraceVerbosity::Verbose
                                        : avlang::TraceVerbosity::Default;
  return choice;
}

int run_file(const std::string& path, const TraceChoice& trace, std::uint64_t max_steps,
             const std::string& output_path) {
  std::ifstream file(path);
  if (!file) {
    std::cerr << "error: cannot open " << path << '\n';
    return 2;
  }
  std::ostringstream source;
  source << file.rdbuf();

  avlang::SourceUnit unit;
  try {
    unit = avlang::parse_unit(source.str());
  } catch (const avlang::ParseError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return 2;
  }

  std::ofstream output_file;
  std::ostream* sink = &std::cout;
  if (!output_path.empty()) {
    output_file.open(output_path);
    if (!output_file) {
      std::cerr << "error: cannot write " << output_path << '\n';
      return 2;
    }
    sink = &output_file;
  }

  avlang::Session session(max_steps, trace.verbosity == avlang::TraceVerbosity::Verbose
                                         ? avlang::TraceDetail::Full
                                         : avlang::TraceDetail::Standard);
  for (const avlang::ClausePtr& clause : unit.declarations) session.declare(clause);

  avlang::Budget budget{max_steps};
  for (const avlang::GoalPtr& directive : unit.directives) {
    avlang::DirectiveOutcome outcome;
    try {
      outcome = session.run_goal(directive, budget);
    } catch (const avlang::EvalError& e) {
      std::cerr << "eval error: " << e.what() << '\n';
      return 2;
    } catch (const avlang::BudgetExceededError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    if (!outcome.succeeded) {
      std::cerr << "failure: " << avlang::render_goal(directive) << '\n';
      return 1;
    }
    *sink << outcome.output << std::flush;
    if (trace.enabled) std::cerr << avlang::render_trace(outcome.trace, trace.verbosity);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpreter for .av programs"};
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand("run", "execute a program file");
  std::string file;
  std::string run_trace_value;
  CLI::Option* run_trace_opt = nullptr;
  std::uint64_t run_max_steps = avlang::kDefaultMaxSteps;
  std::string output_path;
  run_cmd->add_option("file", file, "program file (.av)")->required();
  add_trace_option(*run_cmd, run_trace_value, run_trace_opt);
  run_cmd->add_option("--max-steps", run_max_steps, "step budget for the whole run");
  run_cmd->add_option("--output", output_path, "write program output to this file");

  CLI::App* repl_cmd = app.add_subcommand("repl", "interactive session");
  std::string repl_trace_value;
  CLI::Option* repl_trace_opt = nullptr;
  std::uint64_t repl_max_steps = avlang::kDefaultMaxSteps;
  add_trace_option(*repl_cmd, repl_trace_value, repl_trace_opt);
  repl_cmd->add_option("--max-steps", repl_max_steps, "step budget per directive");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return run_file(file, trace_choice(run_trace_opt, run_trace_value), run_max_steps,
                      output_path);
    }
    TraceChoice trace = trace_choice(repl_trace_opt, repl_trace_value);
    avlang::ReplOptions options;
    options.max_steps = repl_max_steps;
    options.show_trace = trace.enabled;
    options.verbosity = trace.verbosity == avlang::TraceVerbosity::Off
                            ? avlang::TraceVerbosity::Default
                            : trace.verbosity;
    return avlang::run_repl(std::cin, std::cout, std::cerr, options);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
