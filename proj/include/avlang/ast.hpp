#pragma once
// Core abstract syntax: flat terms, expressions, goals, clauses, and the
// program they run against, plus elaboration of anonymous variables.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "avlang/errors.hpp"

namespace avlang {

enum class Visibility { Visible, Blind };

// ---- Terms -----------------------------------------------------------------
// Terms are flat: a call argument is a constant, a named program variable, or
// a logic variable. There are no compound subterms.

struct Atom {
  std::string name;
};
struct Num {
  std::int64_t value = 0;
};
struct Str {
  std::string text;
};
// A named program variable, bound by a quantifier in a clause. Must never
// reach unification; the engine maps it to a LogicVar first.
struct Var {
  std::string name;
};
// A runtime unification variable. Ids are unique within a session and issued
// by a monotone counter; origin records which binder kind produced it.
struct LogicVar {
  std::uint64_t id = 0;
  Visibility origin = Visibility::Visible;
};

inline bool operator==(const Atom& a, const Atom& b) { return a.name == b.name; }
inline bool operator==(const Num& a, const Num& b) { return a.value == b.value; }
inline bool operator==(const Str& a, const Str& b) { return a.text == b.text; }
inline bool operator==(const Var& a, const Var& b) { return a.name == b.name; }
inline bool operator==(const LogicVar& a, const LogicVar& b) {
  return a.id == b.id && a.origin == b.origin;
}

using Term = std::variant<Atom, Num, Str, Var, LogicVar>;

// The surface placeholder `_`. It only exists before elaboration.
inline constexpr const char* kAnonName = "_";

bool is_anon(const Term& t);
bool is_ground(const Term& t);  // no Var, no LogicVar

Term atom(std::string name);
Term num(std::int64_t value);
Term str(std::string text);
Term var(std::string name);

// ---- Expressions -----------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinaryOp { Add, Sub, Mul, Div };

struct Lit {
  Term value;  // ground by construction; elaboration rejects Var/LogicVar
};
struct VarRef {
  std::string name;  // machine-state name or in-scope clause parameter
};
struct BinOp {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<Lit, VarRef, BinOp> node;
};

ExprPtr e_lit(Term value);
ExprPtr e_ref(std::string name);
ExprPtr e_bin(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

// ---- Goals -----------------------------------------------------------------

struct Goal;
using GoalPtr = std::shared_ptr<const Goal>;

struct TrueGoal {};
struct Call {
  std::string name;
  std::vector<Term> args;
};
// A blind existential wrapping a call (possibly through further ExistsBlind
// wrappers). Produced by elaborating `_` in call arguments; never traced.
struct ExistsBlind {
  std::string bound;
  GoalPtr body;
};
struct Assign {
  std::string target;  // machine-state name, never a bound variable
  ExprPtr expr;
};
struct Seq {
  GoalPtr first;
  GoalPtr second;
};
struct CaseBranch {
  Term pattern;  // ground constant
  GoalPtr body;
};
struct Case {
  ExprPtr scrutinee;
  std::vector<CaseBranch> branches;
};

struct Goal {
  std::variant<TrueGoal, Call, ExistsBlind, Assign, Seq, Case> node;
};

inline bool operator==(const Call& a, const Call& b) {
  return a.name == b.name && a.args == b.args;
}

GoalPtr g_true();
GoalPtr g_call(std::string name, std::vector<Term> args);
GoalPtr g_exists(std::string bound, GoalPtr body);
GoalPtr g_assign(std::string target, ExprPtr expr);
GoalPtr g_seq(GoalPtr first, GoalPtr second);
GoalPtr g_case(ExprPtr scrutinee, std::vector<CaseBranch> branches);

// ---- Clauses ---------------------------------------------------------------

struct Clause;
using ClausePtr = std::shared_ptr<const Clause>;

struct Def {
  Call head;
  GoalPtr body;
};
struct ForAll {
  std::string bound;
  Visibility visibility;
  ClausePtr inner;
};
struct Conj {
  ClausePtr left;
  ClausePtr right;
};

struct Clause {
  std::variant<Def, ForAll, Conj> node;
};

ClausePtr c_def(Call head, GoalPtr body);
ClausePtr c_forall(std::string bound, Visibility visibility, ClausePtr inner);
ClausePtr c_conj(ClausePtr left, ClausePtr right);

// ---- Program ---------------------------------------------------------------

// Clause store in declaration order plus the machine state. State values are
// ground at rest.
struct Program {
  std::vector<ClausePtr> clauses;
  std::map<std::string, Term> theta;
};

// ---- Structural equality ---------------------------------------------------

bool exprs_equal(const ExprPtr& a, const ExprPtr& b);
bool goals_equal(const GoalPtr& a, const GoalPtr& b);
bool clauses_equal(const ClausePtr& a, const ClausePtr& b);

// Equality up to consistent renaming of *blind* binders (ExistsBlind and
// blind ForAll). Visible binder names must match exactly.
bool goals_equal_mod_blind(const GoalPtr& a, const GoalPtr& b);
bool clauses_equal_mod_blind(const ClausePtr& a, const ClausePtr& b);

// ---- Free variables ---------------------------------------------------------

// Named variables not bound by an enclosing quantifier. Counts Term Var and
// Expr VarRef occurrences; assignment targets are machine-state names and are
// excluded.
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const ExprPtr& e);
std::set<std::string> free_vars(const GoalPtr& g);
std::set<std::string> free_vars(const ClausePtr& c);

// ---- Elaboration -----------------------------------------------------------

// Supplies binder names for elaborated `_` occurrences: "_1", "_2", ...
// User identifiers start with a letter, so these can never collide.
class NameGen {
 public:
  std::string fresh() { return "_" + std::to_string(++next_); }

 private:
  std::uint64_t next_ = 0;
};

// Rewrites a surface clause into binder-prefix form: every named head
// parameter gets a visible ForAll, every `_` head parameter a blind ForAll
// with a fresh name, binders in head-argument order. Body `_`s become
// ExistsBlind wrappers. Idempotent. Throws ElaborateError if the result is
// not closed or `_` sits somewhere it cannot be bound.
ClausePtr elaborate_clause(const ClausePtr& surface, NameGen& names);

// Rewrites each `_` call argument into a fresh ExistsBlind wrapper around
// that call (first occurrence outermost). Throws ElaborateError for `_` as
// an assignment target, inside an expression, or as a case pattern.
GoalPtr elaborate_goal(const GoalPtr& surface, NameGen& names);

// ---- Visitor helper ----------------------------------------------------------

namespace detail {
template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;
}  // namespace detail

}  // namespace avlang
