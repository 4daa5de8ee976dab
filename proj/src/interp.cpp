#include "avlang/interp.hpp"

#include <functional>
#include <utility>

#include "spare_stack.hpp"

namespace avlang {

using detail::Overload;

namespace {

// One line of search state, threaded by value so abandoned branches leave
// no residue: machine state, bindings, and the trace so far.
struct Path {
  std::map<std::string, Term> theta;
  Substitution subst;
  TraceLog trace;
};

// Accepted: the root continuation took this path. Exhausted: every choice
// under the current node failed. Committed: a completed assignment forbids
// retrying anything chosen before it.
enum class Search { Accepted, Exhausted, Committed };

using Cont = std::function<Search(Path)>;

struct Binder {
  std::string name;
  LogicVar var;
};

class Engine {
 public:
  Engine(const Program& program, VarGen& vars, Budget& budget, TraceDetail detail)
      : clauses_(program.clauses), vars_(vars), budget_(budget), detail_(detail) {}

  Search exec(const GoalPtr& goal, const Env& env, Path path, int depth, const Cont& k) {
    budget_.tick();
    return std::visit(
        Overload{
            [&](const TrueGoal&) { return k(std::move(path)); },
            [&](const Call& c) { return exec_call(c, env, std::move(path), depth, k); },
            [&](const ExistsBlind& e) {
              Env inner = env;
              inner.insert_or_assign(e.bound, vars_.fresh(Visibility::Blind));
              return exec(e.body, inner, std::move(path), depth, k);
            },
            [&](const Assign& a) {
              Term value = eval_expr(a.expr, path.theta, env, path.subst);
              path.theta.insert_or_assign(a.target, value);
              note(path, EvAssigned{a.target, std::move(value)}, depth);
              Search r = k(std::move(path));
              return r == Search::Exhausted ? Search::Committed : r;
            },
            [&](const Seq& s) {
              const Cont rest = [&](Path p) {
                return exec(s.second, env, std::move(p), depth, k);
              };
              return exec(s.first, env, std::move(path), depth, rest);
            },
            [&](const Case& c) {
              Term value = eval_expr(c.scrutinee, path.theta, env, path.subst);
              for (const CaseBranch& branch : c.branches)
                if (branch.pattern == value)
                  return exec(branch.body, env, std::move(path), depth, k);
              return Search::Exhausted;
            },
        },
        goal->node);
  }

 private:
  Search exec_call(const Call& call, const Env& env, Path path, int depth, const Cont& k) {
    Call resolved{call.name, {}};
    resolved.args.reserve(call.args.size());
    for (const Term& arg : call.args) resolved.args.push_back(resolve_arg(arg, env, path));

    if (is_builtin(call.name)) return exec_print(std::move(resolved), std::move(path), depth, k);

    note_full(path, EvCallEnter{resolved}, depth);
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      Path attempt = path;
      Search r = backchain(clauses_[i], i, resolved, {}, std::move(attempt), depth, k);
      if (r != Search::Exhausted) return r;
      note_full(path, EvFailedBranch{i}, depth);
    }
    return Search::Exhausted;
  }

  Search exec_print(Call call, Path path, int depth, const Cont& k) {
    note_full(path, EvCallEnter{call}, depth);
    if (call.args.size() != 1)
      throw EvalError("print expects 1 argument, got " + std::to_string(call.args.size()));
    const Term& value = call.args[0];
    if (std::holds_alternative<LogicVar>(value)) throw EvalError("print: argument is unbound");
    note(path, EvPrinted{display_term(value)}, depth);
    return k(std::move(path));
  }

  Search backchain(const ClausePtr& clause, std::size_t index, const Call& goal,
                   std::vector<Binder> prefix, Path path, int depth, const Cont& k) {
    budget_.tick();
    return std::visit(
        Overload{
            [&](const Def& def) {
              Call head{def.head.name, {}};
              head.args.reserve(def.head.args.size());
              for (const Term& arg : def.head.args) head.args.push_back(bind_param(arg, prefix));
              auto unified = unify_call(head, goal, path.subst);
              if (!unified) return Search::Exhausted;
              path.subst = *std::move(unified);
              note_full(path, EvMatchedClause{index}, depth);

              Env body_env;
              for (const Binder& b : prefix) body_env.insert_or_assign(b.name, b.var);

              // Visible instantiations are recorded once the body has
              // completed, with values as resolved at that point.
              const Cont after = [&, prefix = std::move(prefix)](Path p) {
                for (const Binder& b : prefix) {
                  if (b.var.origin != Visibility::Visible) continue;
                  Term value = p.subst.resolve(Term{b.var});
                  note(p, EvInstantiated{b.name, std::move(value), Visibility::Visible},
                       depth + 1);
                }
                return k(std::move(p));
              };
              return exec(def.body, body_env, std::move(path), depth + 1, after);
            },
            [&](const ForAll& fa) {
              prefix.push_back(Binder{fa.bound, vars_.fresh(fa.visibility)});
              return backchain(fa.inner, index, goal, std::move(prefix), std::move(path), depth,
                               k);
            },
            [&](const Conj& cj) {
              Path second = path;
              Search r = backchain(cj.left, index, goal, prefix, std::move(path), depth, k);
              if (r != Search::Exhausted) return r;
              return backchain(cj.right, index, goal, std::move(prefix), std::move(second),
                               depth, k);
            },
        },
        clause->node);
  }

  Term bind_param(const Term& arg, const std::vector<Binder>& prefix) const {
    if (const Var* v = std::get_if<Var>(&arg)) {
      for (const Binder& b : prefix)
        if (b.name == v->name) return Term{b.var};
      throw InternalFault("head parameter '" + v->name + "' has no binder");
    }
    return arg;
  }

  Term resolve_arg(const Term& arg, const Env& env, const Path& path) const {
    return std::visit(Overload{
                          [&](const Var& v) -> Term {
                            auto it = env.find(v.name);
                            if (it == env.end())
                              throw InternalFault("unbound name '" + v.name + "' in call");
                            return path.subst.resolve(Term{it->second});
                          },
                          [&](const Atom& a) -> Term {
                            auto it = path.theta.find(a.name);
                            return it != path.theta.end() ? it->second : Term{a};
                          },
                          [&](const LogicVar& lv) -> Term {
                            return path.subst.resolve(Term{lv});
                          },
                          [&](const Num& n) -> Term { return Term{n}; },
                          [&](const Str& s) -> Term { return Term{s}; },
                      },
                      arg);
  }

  // Standard-detail events: always kept.
  void note(Path& path, auto event, int depth) {
    path.trace = record(std::move(path.trace), TraceEvent{std::move(event), depth});
  }

  // Full-detail events: search bookkeeping, kept only for verbose traces.
  void note_full(Path& path, auto event, int depth) {
    if (detail_ == TraceDetail::Full) note(path, std::move(event), depth);
  }

  const std::vector<ClausePtr>& clauses_;
  VarGen& vars_;
  Budget& budget_;
  TraceDetail detail_;
};

}  // namespace

Outcome exec(const GoalPtr& goal, const Program& program, const Env& env,
             const Substitution& subst, VarGen& vars, Budget& budget, TraceDetail detail) {
  Engine engine(program, vars, budget, detail);
  Outcome out;
  const Cont accept = [&](Path p) {
    out = Success{Program{program.clauses, std::move(p.theta)}, std::move(p.subst),
                  std::move(p.trace)};
    return Search::Accepted;
  };
  engine.exec(goal, env, Path{program.theta, subst, {}}, 0, accept);
  return out;
}

Outcome solve(const GoalPtr& goal, const Program& program, VarGen& vars, Budget& budget,
              TraceDetail detail) {
  return detail::call_on_spare_stack(
      [&] { return exec(goal, program, Env{}, Substitution{}, vars, budget, detail); });
}

Term eval_expr(const ExprPtr& expr, const std::map<std::string, Term>& theta, const Env& env,
               const Substitution& subst) {
  return std::visit(
      Overload{
          [&](const Lit& l) -> Term { return l.value; },
          [&](const VarRef& r) -> Term {
            if (auto it = theta.find(r.name); it != theta.end()) return it->second;
            if (auto it = env.find(r.name); it != env.end()) {
              Term value = subst.resolve(Term{it->second});
              if (std::holds_alternative<LogicVar>(value))
                throw EvalError("variable '" + r.name + "' is unbound");
              return value;
            }
            throw EvalError("variable '" + r.name + "' is unbound");
          },
          [&](const BinOp& b) -> Term {
            Term lhs = eval_expr(b.lhs, theta, env, subst);
            Term rhs = eval_expr(b.rhs, theta, env, subst);
            const Num* ln = std::get_if<Num>(&lhs);
            const Num* rn = std::get_if<Num>(&rhs);
            if (ln == nullptr || rn == nullptr)
              throw EvalError("arithmetic on non-numeric value");
            switch (b.op) {
              case BinaryOp::Add: return num(ln->value + rn->value);
              case BinaryOp::Sub: return num(ln->value - rn->value);
              case BinaryOp::Mul: return num(ln->value * rn->value);
              case BinaryOp::Div:
                if (rn->value == 0) throw EvalError("division by zero");
                return num(ln->value / rn->value);
            }
            throw InternalFault("unhandled binary operator");
          },
      },
      expr->node);
}

bool is_builtin(const std::string& name) { return name == "print"; }

Session::Session(std::uint64_t max_steps, TraceDetail detail)
    : max_steps_(max_steps), detail_(detail) {}

void Session::declare(ClausePtr clause) { program_.clauses.push_back(std::move(clause)); }

DirectiveOutcome Session::run_goal(const GoalPtr& goal) {
  Budget budget{max_steps_};
  return run_goal(goal, budget);
}

DirectiveOutcome Session::run_goal(const GoalPtr& goal, Budget& budget) {
  Outcome out = solve(goal, program_, vars_, budget, detail_);
  DirectiveOutcome result;
  if (!out) return result;
  result.succeeded = true;
  result.output = printed_output(out->trace);
  result.trace = std::move(out->trace);
  program_.theta = std::move(out->program.theta);
  return result;
}

RunResult run_unit(const SourceUnit& unit, Budget& budget, TraceDetail detail) {
  Session session(budget.max_steps, detail);
  for (const ClausePtr& clause : unit.declarations) session.declare(clause);
  RunResult result;
  for (const GoalPtr& directive : unit.directives) {
    DirectiveOutcome outcome = session.run_goal(directive, budget);
    bool ok = outcome.succeeded;
    result.directives.push_back(std::move(outcome));
    if (!ok) {
      result.succeeded = false;
      break;
    }
  }
  result.theta = session.theta();
  return result;
}

RunResult run_unit(const SourceUnit& unit) {
  Budget budget;
  return run_unit(unit, budget);
}

}  // namespace avlang
