#pragma once
// Goal execution: backchaining over declarations with chronological
// backtracking, destructive machine state, and a step budget.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avlang/ast.hpp"
#include "avlang/errors.hpp"
#include "avlang/parser.hpp"
#include "avlang/trace.hpp"
#include "avlang/unify.hpp"

namespace avlang {

inline constexpr std::uint64_t kDefaultMaxSteps = 100000;

// Counts goal and clause dispatches; throws BudgetExceededError past the cap.
struct Budget {
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::uint64_t used = 0;

  void tick() {
    if (++used > max_steps) throw BudgetExceededError(max_steps);
  }
};

// Standard records only the events the default trace and program output need
// (instantiations, assignments, prints); Full adds call/match/failure events
// for the verbose trace.
enum class TraceDetail { Standard, Full };

// Local bindings: in-scope quantified names to their logic variables.
using Env = std::map<std::string, LogicVar>;

struct Success {
  Program program;     // clauses plus final machine state
  Substitution subst;
  TraceLog trace;
};

// Failure is empty; errors travel as exceptions.
using Outcome = std::optional<Success>;

// Executes one goal. Clause alternatives and conjunct choices backtrack
// chronologically; completed assignments do not (a failure after one fails
// the goal outright). Throws EvalError, BudgetExceededError.
Outcome exec(const GoalPtr& goal, const Program& program, const Env& env,
             const Substitution& subst, VarGen& vars, Budget& budget,
             TraceDetail detail = TraceDetail::Full);

// exec from a clean slate (empty env and substitution), run on a dedicated
// deep stack so recursion is bounded by the budget, not the thread stack.
Outcome solve(const GoalPtr& goal, const Program& program, VarGen& vars, Budget& budget,
              TraceDetail detail = TraceDetail::Full);

// Expression value under machine state, local bindings, and substitution.
// Lookup order for names: machine state first, then local bindings.
Term eval_expr(const ExprPtr& expr, const std::map<std::string, Term>& theta, const Env& env,
               const Substitution& subst);

// Builtin goals claim their names ahead of any declaration.
bool is_builtin(const std::string& name);

struct DirectiveOutcome {
  bool succeeded = false;
  std::string output;  // printed text, newline-terminated per print
  TraceLog trace;      // empty when the directive failed
};

// A persistent machine: declarations and machine state survive across
// directives, as in an interactive session.
class Session {
 public:
  explicit Session(std::uint64_t max_steps = kDefaultMaxSteps,
                   TraceDetail detail = TraceDetail::Full);

  void declare(ClausePtr clause);

  // Runs one directive with a fresh budget (first form) or a caller-owned
  // shared budget (second form). On failure the machine state is unchanged.
  DirectiveOutcome run_goal(const GoalPtr& goal);
  DirectiveOutcome run_goal(const GoalPtr& goal, Budget& budget);

  const std::map<std::string, Term>& theta() const { return program_.theta; }
  const std::vector<ClausePtr>& clauses() const { return program_.clauses; }

 private:
  Program program_;
  VarGen vars_;
  std::uint64_t max_steps_;
  TraceDetail detail_;
};

struct RunResult {
  bool succeeded = true;               // false once a directive fails
  std::vector<DirectiveOutcome> directives;  // stops after the first failure
  std::map<std::string, Term> theta;   // machine state when the run ended
};

// Runs a parsed unit: installs the declarations, then executes the
// directives in order against one budget, stopping at the first failure.
RunResult run_unit(const SourceUnit& unit, Budget& budget,
                   TraceDetail detail = TraceDetail::Full);
RunResult run_unit(const SourceUnit& unit);

}  // namespace avlang
