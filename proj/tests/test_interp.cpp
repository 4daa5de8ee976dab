#include "avlang/interp.hpp"
#include "doctest.h"
#include "support/oracle.hpp"
#include "support/util.hpp"

using namespace avlang;
using test_support::run_source;

namespace {

Outcome solve_goal(const GoalPtr& goal, const Program& program,
                   std::uint64_t max_steps = kDefaultMaxSteps) {
  VarGen vars;
  Budget budget{max_steps};
  return solve(goal, program, vars, budget);
}

}  // namespace

TEST_CASE("executing true changes nothing") {
  Program program;
  program.theta.insert_or_assign("n", num(7));
  Substitution s = Substitution{}.extend(1, atom("a"));
  VarGen vars;
  Budget budget;
  Outcome out = exec(g_true(), program, {}, s, vars, budget);
  REQUIRE(out.has_value());
  CHECK(out->program.theta == program.theta);
  CHECK(out->subst.bindings() == s.bindings());
  CHECK(out->trace.events.empty());
}

TEST_CASE("assignment evaluates and replaces") {
  Program program;
  program.theta.insert_or_assign("amount", num(1));
  Outcome out = solve_goal(g_assign("amount", e_bin(BinaryOp::Add, e_ref("amount"), e_lit(num(4)))),
                           program);
  REQUIRE(out.has_value());
  CHECK(out->program.theta.at("amount") == num(5));
  CHECK(out->program.theta.size() == 1);
  REQUIRE(out->trace.events.size() == 1);
  const auto* ev = std::get_if<EvAssigned>(&out->trace.events[0].data);
  REQUIRE(ev != nullptr);
  CHECK(ev->name == "amount");
  CHECK(ev->value == num(5));
}

TEST_CASE("expression evaluation") {
  std::map<std::string, Term> theta{{"amount", str("$10K")}};
  Env env;
  Substitution s;
  CHECK(eval_expr(e_ref("amount"), theta, env, s) == str("$10K"));
  CHECK(eval_expr(e_lit(num(7)), theta, env, s) == num(7));
  CHECK(eval_expr(e_bin(BinaryOp::Add, e_lit(num(3)), e_lit(num(4))), {}, env, s) == num(7));
  CHECK(eval_expr(e_bin(BinaryOp::Div, e_lit(num(9)), e_lit(num(2))), {}, env, s) == num(4));

  CHECK_THROWS_AS(eval_expr(e_ref("missing"), theta, env, s), EvalError);
  CHECK_THROWS_AS(eval_expr(e_bin(BinaryOp::Div, e_lit(num(1)), e_lit(num(0))), {}, env, s),
                  EvalError);
  CHECK_THROWS_AS(
      eval_expr(e_bin(BinaryOp::Add, e_lit(str("$1K")), e_lit(num(1))), {}, env, s), EvalError);
}

TEST_CASE("machine state wins over a parameter of the same name") {
  std::map<std::string, Term> theta{{"x", num(10)}};
  Env env{{"x", LogicVar{1, Visibility::Visible}}};
  Substitution s = Substitution{}.extend(1, num(3));
  CHECK(eval_expr(e_ref("x"), theta, env, s) == num(10));
  CHECK(eval_expr(e_ref("x"), {}, env, s) == num(3));
  Env unbound{{"y", LogicVar{2, Visibility::Blind}}};
  CHECK_THROWS_AS(eval_expr(e_ref("y"), {}, unbound, s), EvalError);
}

TEST_CASE("print writes the rendered value with a newline") {
  RunResult r = run_source("run amount = 7; print(amount); print(done); print($10K).");
  REQUIRE(r.succeeded);
  CHECK(test_support::all_output(r) == "7\ndone\n$10K\n");
}

TEST_CASE("print rejects wrong arity and unbound arguments") {
  CHECK_THROWS_AS(run_source("run print(a, b)."), EvalError);
  CHECK_THROWS_AS(run_source("run print(_)."), EvalError);
}

TEST_CASE("a builtin name shadows declarations") {
  RunResult r = run_source("print(x) = true. run print(foo).");
  REQUIRE(r.succeeded);
  CHECK(test_support::all_output(r) == "foo\n");
}

TEST_CASE("backchaining fails on a name mismatch") {
  Program program;
  program.clauses.push_back(c_def(Call{"p", {}}, g_true()));
  CHECK_FALSE(solve_goal(g_call("q", {}), program).has_value());
}

TEST_CASE("a conjunctive clause derives through its right part") {
  // Left conjunct's body cannot succeed; right one is trivial.
  ClausePtr clause = c_conj(c_def(Call{"p", {}}, g_call("missing", {})),
                            c_def(Call{"p", {}}, g_true()));
  Program program;
  program.clauses.push_back(clause);
  CHECK(solve_goal(g_call("p", {}), program).has_value());
  CHECK(oracle::derivable(g_call("p", {}), program.clauses, 12));
}

TEST_CASE("clauses are tried in declaration order") {
  RunResult r = run_source(
      "route(x) = case x of north : true end.\n"
      "route(x) = case x of south : true end.\n"
      "run route(south); print(chosen).\n");
  REQUIRE(r.succeeded);
  CHECK(test_support::all_output(r) == "chosen\n");

  bool failed_first = false;
  bool matched_second = false;
  for (const TraceEvent& event : r.directives[0].trace.events) {
    if (const auto* f = std::get_if<EvFailedBranch>(&event.data))
      failed_first = failed_first || f->clause_index == 0;
    if (const auto* m = std::get_if<EvMatchedClause>(&event.data))
      matched_second = matched_second || m->clause_index == 1;
  }
  CHECK(failed_first);
  CHECK(matched_second);
}

TEST_CASE("bindings flow back to the caller through unification") {
  // p(x) = q(x).  q(a) = true.  Calling p with a fresh variable grounds it.
  Program program;
  program.clauses.push_back(
      c_forall("x", Visibility::Visible, c_def(Call{"p", {var("x")}}, g_call("q", {var("x")}))));
  program.clauses.push_back(c_def(Call{"q", {atom("a")}}, g_true()));
  Outcome out = solve_goal(g_exists("e", g_call("p", {var("e")})), program);
  REQUIRE(out.has_value());

  bool saw = false;
  for (const TraceEvent& event : out->trace.events)
    if (const auto* inst = std::get_if<EvInstantiated>(&event.data)) {
      CHECK(inst->name == "x");
      CHECK(inst->value == atom("a"));  // resolved when the body completed
      saw = true;
    }
  CHECK(saw);
}

TEST_CASE("search retries an earlier choice when a later goal fails") {
  // q has two answers; only the second survives r. A committed-choice
  // engine would stop at the first and miss the derivation.
  Program program;
  program.clauses.push_back(c_def(Call{"q", {atom("a")}}, g_true()));
  program.clauses.push_back(c_def(Call{"q", {atom("b")}}, g_true()));
  program.clauses.push_back(c_def(Call{"r", {atom("b")}}, g_true()));
  GoalPtr goal = g_exists("e", g_seq(g_call("q", {var("e")}), g_call("r", {var("e")})));
  CHECK(solve_goal(goal, program).has_value());
  CHECK(oracle::derivable(goal, program.clauses, 12));
}

TEST_CASE("no backtracking across a completed assignment") {
  // Clause 1 assigns and then fails; clause 2 would succeed, but the
  // assignment already committed the search.
  Program program;
  program.clauses.push_back(
      c_def(Call{"p", {}}, g_seq(g_assign("n", e_lit(num(1))), g_call("missing", {}))));
  program.clauses.push_back(c_def(Call{"p", {}}, g_true()));
  CHECK_FALSE(solve_goal(g_call("p", {}), program).has_value());
}

TEST_CASE("failure without an assignment still backtracks") {
  Program program;
  program.clauses.push_back(c_def(Call{"p", {}}, g_call("missing", {})));
  program.clauses.push_back(c_def(Call{"p", {}}, g_true()));
  CHECK(solve_goal(g_call("p", {}), program).has_value());
}

TEST_CASE("case picks the first matching branch only") {
  RunResult r = run_source(
      "pick(x) = case x of a : print(first) a : print(second) end. run pick(a).");
  REQUIRE(r.succeeded);
  CHECK(test_support::all_output(r) == "first\n");

  RunResult none = run_source("pick(x) = case x of a : true end. run pick(b).");
  CHECK_FALSE(none.succeeded);
}

TEST_CASE("a matching branch that fails does not fall through to later branches") {
  RunResult r = run_source(
      "pick(x) = case x of a : nope() a : true end. run pick(a).");
  CHECK_FALSE(r.succeeded);
}

TEST_CASE("case on an unbound value is an evaluation error") {
  CHECK_THROWS_AS(run_source("pick(x) = case x of a : true end. run pick(_)."),
                  EvalError);
}

TEST_CASE("a failed directive leaves no state and prints nothing") {
  RunResult r = run_source("run print(before); missing().");
  CHECK_FALSE(r.succeeded);
  CHECK(test_support::all_output(r).empty());
  CHECK(r.theta.empty());
}

TEST_CASE("directives thread state and stop at the first failure") {
  RunResult two = run_source("run amount = 1. run amount = 2.");
  REQUIRE(two.succeeded);
  CHECK(two.theta == std::map<std::string, Term>{{"amount", num(2)}});

  RunResult stopped = run_source("run missing(). run amount = 1.");
  CHECK_FALSE(stopped.succeeded);
  CHECK(stopped.directives.size() == 1);
  CHECK(stopped.theta.empty());

  RunResult empty = run_source("p() = true.");
  CHECK(empty.succeeded);
  CHECK(empty.theta.empty());
}

TEST_CASE("blind binders instantiate without leaving a trace") {
  RunResult r = run_source(test_support::read_file(test_support::program_path("blind_body.av")));
  REQUIRE(r.succeeded);
  CHECK(test_support::all_output(r) == "ok\n");
  std::set<std::string> names = test_support::instantiated_names(r.directives[0].trace);
  CHECK(names == std::set<std::string>{"s"});
}

TEST_CASE("the step budget cuts off runaway recursion") {
  // Default cap, standard detail: the shape the CLI runs with.
  CHECK_THROWS_AS(run_source("spin() = spin(). run spin().", kDefaultMaxSteps,
                             TraceDetail::Standard),
                  BudgetExceededError);
  CHECK_THROWS_AS(run_source("spin() = spin(). run spin().", 500), BudgetExceededError);
}

TEST_CASE("budget counts are deterministic") {
  auto used = [] {
    SourceUnit unit = parse_unit("run amount = 1; print(amount).");
    Budget budget;
    run_unit(unit, budget);
    return budget.used;
  };
  CHECK(used() == used());
  CHECK(used() > 0);
}

TEST_CASE("the golden program behaves identically through the session API") {
  Session session;
  SourceUnit unit =
      parse_unit(test_support::read_file(test_support::program_path("tuition_visible.av")));
  for (const ClausePtr& clause : unit.declarations) session.declare(clause);
  DirectiveOutcome outcome = session.run_goal(unit.directives[0]);
  REQUIRE(outcome.succeeded);
  CHECK(outcome.output == "$10K\n");
  CHECK(session.theta().at("amount") == str("$10K"));
}
