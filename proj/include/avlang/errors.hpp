#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace avlang {

// Broken internal contract (bad AST reaching the engine, a named variable
// reaching the unifier, ...). Distinct from object-language failure, which
// is an ordinary Outcome value.
struct InternalFault : std::logic_error {
  using std::logic_error::logic_error;
};

// Expression/builtin evaluation errors: unbound variables, non-numeric
// operands, division by zero, bad builtin arguments.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The search exceeded its step budget. An error, not a failure.
struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(std::uint64_t max_steps)
      : std::runtime_error("step budget exceeded (" + std::to_string(max_steps) + " steps)"),
        max_steps(max_steps) {}
  std::uint64_t max_steps;
};

// Surface-to-core elaboration rejected the input. The parser re-throws
// these as positioned ParseErrors; programmatic callers see them directly.
struct ElaborateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace avlang
