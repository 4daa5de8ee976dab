#include "avlang/ast.hpp"

#include <algorithm>
#include <utility>

namespace avlang {

using detail::Overload;

bool is_anon(const Term& t) {
  const Var* v = std::get_if<Var>(&t);
  return v != nullptr && v->name == kAnonName;
}

bool is_ground(const Term& t) {
  return !std::holds_alternative<Var>(t) && !std::holds_alternative<LogicVar>(t);
}

Term atom(std::string name) { return Atom{std::move(name)}; }
Term num(std::int64_t value) { return Num{value}; }
Term str(std::string text) { return Str{std::move(text)}; }
Term var(std::string name) { return Var{std::move(name)}; }

ExprPtr e_lit(Term value) { return std::make_shared<Expr>(Expr{Lit{std::move(value)}}); }
ExprPtr e_ref(std::string name) { return std::make_shared<Expr>(Expr{VarRef{std::move(name)}}); }
ExprPtr e_bin(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{BinOp{op, std::move(lhs), std::move(rhs)}});
}

GoalPtr g_true() {
  static const GoalPtr truth = std::make_shared<Goal>(Goal{TrueGoal{}});
  return truth;
}
GoalPtr g_call(std::string name, std::vector<Term> args) {
  return std::make_shared<Goal>(Goal{Call{std::move(name), std::move(args)}});
}
GoalPtr g_exists(std::string bound, GoalPtr body) {
  return std::make_shared<Goal>(Goal{ExistsBlind{std::move(bound), std::move(body)}});
}
GoalPtr g_assign(std::string target, ExprPtr expr) {
  return std::make_shared<Goal>(Goal{Assign{std::move(target), std::move(expr)}});
}
GoalPtr g_seq(GoalPtr first, GoalPtr second) {
  return std::make_shared<Goal>(Goal{Seq{std::move(first), std::move(second)}});
}
GoalPtr g_case(ExprPtr scrutinee, std::vector<CaseBranch> branches) {
  return std::make_shared<Goal>(Goal{Case{std::move(scrutinee), std::move(branches)}});
}

ClausePtr c_def(Call head, GoalPtr body) {
  return std::make_shared<Clause>(Clause{Def{std::move(head), std::move(body)}});
}
ClausePtr c_forall(std::string bound, Visibility visibility, ClausePtr inner) {
  return std::make_shared<Clause>(Clause{ForAll{std::move(bound), visibility, std::move(inner)}});
}
ClausePtr c_conj(ClausePtr left, ClausePtr right) {
  return std::make_shared<Clause>(Clause{Conj{std::move(left), std::move(right)}});
}

// ---- Equality ----------------------------------------------------------------

namespace {

// Maps binder names left-to-right while comparing under blind-alpha mode.
struct Renaming {
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> rev;

  Renaming with(const std::string& a, const std::string& b) const {
    Renaming r = *this;
    r.fwd[a] = b;
    r.rev[b] = a;
    return r;
  }

  bool matches(const std::string& a, const std::string& b) const {
    auto f = fwd.find(a);
    auto r = rev.find(b);
    if (f == fwd.end() && r == rev.end()) return a == b;
    return f != fwd.end() && r != rev.end() && f->second == b && r->second == a;
  }
};

bool term_eq(const Term& a, const Term& b, const Renaming& rn) {
  const Var* va = std::get_if<Var>(&a);
  const Var* vb = std::get_if<Var>(&b);
  if (va != nullptr && vb != nullptr) return rn.matches(va->name, vb->name);
  return a == b;
}

bool expr_eq(const ExprPtr& a, const ExprPtr& b, const Renaming& rn) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(Overload{
                        [&](const Lit& x) { return term_eq(x.value, std::get<Lit>(b->node).value, rn); },
                        [&](const VarRef& x) { return rn.matches(x.name, std::get<VarRef>(b->node).name); },
                        [&](const BinOp& x) {
                          const BinOp& y = std::get<BinOp>(b->node);
                          return x.op == y.op && expr_eq(x.lhs, y.lhs, rn) && expr_eq(x.rhs, y.rhs, rn);
                        },
                    },
                    a->node);
}

bool call_eq(const Call& a, const Call& b, const Renaming& rn) {
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!term_eq(a.args[i], b.args[i], rn)) return false;
  return true;
}

bool goal_eq(const GoalPtr& a, const GoalPtr& b, const Renaming& rn, bool blind_alpha) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      Overload{
          [&](const TrueGoal&) { return true; },
          [&](const Call& x) { return call_eq(x, std::get<Call>(b->node), rn); },
          [&](const ExistsBlind& x) {
            const ExistsBlind& y = std::get<ExistsBlind>(b->node);
            if (blind_alpha)
              return goal_eq(x.body, y.body, rn.with(x.bound, y.bound), blind_alpha);
            return x.bound == y.bound && goal_eq(x.body, y.body, rn, blind_alpha);
          },
          [&](const Assign& x) {
            const Assign& y = std::get<Assign>(b->node);
            return x.target == y.target && expr_eq(x.expr, y.expr, rn);
          },
          [&](const Seq& x) {
            const Seq& y = std::get<Seq>(b->node);
            return goal_eq(x.first, y.first, rn, blind_alpha) &&
                   goal_eq(x.second, y.second, rn, blind_alpha);
          },
          [&](const Case& x) {
            const Case& y = std::get<Case>(b->node);
            if (!expr_eq(x.scrutinee, y.scrutinee, rn)) return false;
            if (x.branches.size() != y.branches.size()) return false;
            for (std::size_t i = 0; i < x.branches.size(); ++i) {
              if (!(x.branches[i].pattern == y.branches[i].pattern)) return false;
              if (!goal_eq(x.branches[i].body, y.branches[i].body, rn, blind_alpha)) return false;
            }
            return true;
          },
      },
      a->node);
}

bool clause_eq(const ClausePtr& a, const ClausePtr& b, const Renaming& rn, bool blind_alpha) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      Overload{
          [&](const Def& x) {
            const Def& y = std::get<Def>(b->node);
            return call_eq(x.head, y.head, rn) && goal_eq(x.body, y.body, rn, blind_alpha);
          },
          [&](const ForAll& x) {
            const ForAll& y = std::get<ForAll>(b->node);
            if (x.visibility != y.visibility) return false;
            if (blind_alpha && x.visibility == Visibility::Blind)
              return clause_eq(x.inner, y.inner, rn.with(x.bound, y.bound), blind_alpha);
            return x.bound == y.bound && clause_eq(x.inner, y.inner, rn, blind_alpha);
          },
          [&](const Conj& x) {
            const Conj& y = std::get<Conj>(b->node);
            return clause_eq(x.left, y.left, rn, blind_alpha) &&
                   clause_eq(x.right, y.right, rn, blind_alpha);
          },
      },
      a->node);
}

}  // namespace

bool exprs_equal(const ExprPtr& a, const ExprPtr& b) { return expr_eq(a, b, {}); }
bool goals_equal(const GoalPtr& a, const GoalPtr& b) { return goal_eq(a, b, {}, false); }
bool clauses_equal(const ClausePtr& a, const ClausePtr& b) { return clause_eq(a, b, {}, false); }
bool goals_equal_mod_blind(const GoalPtr& a, const GoalPtr& b) { return goal_eq(a, b, {}, true); }
bool clauses_equal_mod_blind(const ClausePtr& a, const ClausePtr& b) {
  return clause_eq(a, b, {}, true);
}

// ---- Free variables -----------------------------------------------------------

namespace {

void collect_term(const Term& t, std::set<std::string>& out) {
  if (const Var* v = std::get_if<Var>(&t)) out.insert(v->name);
}

void collect_expr(const ExprPtr& e, std::set<std::string>& out) {
  if (e == nullptr) return;
  std::visit(Overload{
                 [&](const Lit& x) { collect_term(x.value, out); },
                 [&](const VarRef& x) { out.insert(x.name); },
                 [&](const BinOp& x) {
                   collect_expr(x.lhs, out);
                   collect_expr(x.rhs, out);
                 },
             },
             e->node);
}

void collect_goal(const GoalPtr& g, std::set<std::string>& out) {
  if (g == nullptr) return;
  std::visit(Overload{
                 [&](const TrueGoal&) {},
                 [&](const Call& x) {
                   for (const Term& t : x.args) collect_term(t, out);
                 },
                 [&](const ExistsBlind& x) {
                   std::set<std::string> inner;
                   collect_goal(x.body, inner);
                   inner.erase(x.bound);
                   out.insert(inner.begin(), inner.end());
                 },
                 [&](const Assign& x) { collect_expr(x.expr, out); },  // target excluded
                 [&](const Seq& x) {
                   collect_goal(x.first, out);
                   collect_goal(x.second, out);
                 },
                 [&](const Case& x) {
                   collect_expr(x.scrutinee, out);
                   for (const CaseBranch& br : x.branches) {
                     collect_term(br.pattern, out);
                     collect_goal(br.body, out);
                   }
                 },
             },
             g->node);
}

void collect_clause(const ClausePtr& c, std::set<std::string>& out) {
  if (c == nullptr) return;
  std::visit(Overload{
                 [&](const Def& x) {
                   for (const Term& t : x.head.args) collect_term(t, out);
                   collect_goal(x.body, out);
                 },
                 [&](const ForAll& x) {
                   std::set<std::string> inner;
                   collect_clause(x.inner, inner);
                   inner.erase(x.bound);
                   out.insert(inner.begin(), inner.end());
                 },
                 [&](const Conj& x) {
                   collect_clause(x.left, out);
                   collect_clause(x.right, out);
                 },
             },
             c->node);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_term(t, out);
  return out;
}
std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> out;
  collect_expr(e, out);
  return out;
}
std::set<std::string> free_vars(const GoalPtr& g) {
  std::set<std::string> out;
  collect_goal(g, out);
  return out;
}
std::set<std::string> free_vars(const ClausePtr& c) {
  std::set<std::string> out;
  collect_clause(c, out);
  return out;
}

// ---- Elaboration ----------------------------------------------------------------

namespace {

void reject_anon_in_expr(const ExprPtr& e, const char* where) {
  for (const std::string& name : free_vars(e))
    if (name == kAnonName)
      throw ElaborateError(std::string("'_' cannot appear ") + where);
  if (e == nullptr) return;
  if (const Lit* lit = std::get_if<Lit>(&e->node)) {
    if (!is_ground(lit->value)) throw ElaborateError("literal expression must be ground");
  } else if (const BinOp* bin = std::get_if<BinOp>(&e->node)) {
    reject_anon_in_expr(bin->lhs, where);
    reject_anon_in_expr(bin->rhs, where);
  }
}

GoalPtr elaborate_goal_impl(const GoalPtr& g, NameGen& names) {
  if (g == nullptr) throw InternalFault("null goal in elaboration");
  return std::visit(
      Overload{
          [&](const TrueGoal&) { return g; },
          [&](const Call& x) {
            std::vector<std::string> fresh;
            std::vector<Term> args = x.args;
            for (Term& t : args) {
              if (!is_anon(t)) continue;
              fresh.push_back(names.fresh());
              t = var(fresh.back());
            }
            if (fresh.empty()) return g;
            GoalPtr wrapped = g_call(x.name, std::move(args));
            for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
              wrapped = g_exists(*it, std::move(wrapped));
            return wrapped;
          },
          [&](const ExistsBlind& x) {
            GoalPtr body = elaborate_goal_impl(x.body, names);
            if (body == x.body) return g;
            return g_exists(x.bound, std::move(body));
          },
          [&](const Assign& x) {
            if (x.target == kAnonName)
              throw ElaborateError("'_' cannot be an assignment target");
            reject_anon_in_expr(x.expr, "in an expression");
            return g;
          },
          [&](const Seq& x) {
            GoalPtr first = elaborate_goal_impl(x.first, names);
            GoalPtr second = elaborate_goal_impl(x.second, names);
            if (first == x.first && second == x.second) return g;
            return g_seq(std::move(first), std::move(second));
          },
          [&](const Case& x) {
            reject_anon_in_expr(x.scrutinee, "in a case scrutinee");
            bool changed = false;
            std::vector<CaseBranch> branches;
            branches.reserve(x.branches.size());
            for (const CaseBranch& br : x.branches) {
              if (!is_ground(br.pattern))
                throw ElaborateError("case patterns must be ground constants");
              GoalPtr body = elaborate_goal_impl(br.body, names);
              changed = changed || body != br.body;
              branches.push_back(CaseBranch{br.pattern, std::move(body)});
            }
            if (!changed) return g;
            return g_case(x.scrutinee, std::move(branches));
          },
      },
      g->node);
}

struct Binder {
  std::string name;
  Visibility visibility;
};

// Unwraps an existing quantifier prefix, elaborates the core, and rebuilds.
ClausePtr elaborate_core(const ClausePtr& c, NameGen& names, std::set<std::string>& bound) {
  return std::visit(
      Overload{
          [&](const Def& x) {
            std::vector<Binder> added;
            std::vector<Term> args = x.head.args;
            for (Term& t : args) {
              const Var* v = std::get_if<Var>(&t);
              if (v == nullptr) continue;
              if (v->name == kAnonName) {
                std::string name = names.fresh();
                added.push_back(Binder{name, Visibility::Blind});
                t = var(std::move(name));
              } else if (bound.insert(v->name).second) {
                added.push_back(Binder{v->name, Visibility::Visible});
              }
            }
            GoalPtr body = elaborate_goal_impl(x.body, names);
            ClausePtr out = c_def(Call{x.head.name, std::move(args)}, std::move(body));
            for (auto it = added.rbegin(); it != added.rend(); ++it)
              out = c_forall(it->name, it->visibility, std::move(out));
            return out;
          },
          [&](const ForAll& x) {
            bool fresh_name = bound.insert(x.bound).second;
            if (!fresh_name)
              throw ElaborateError("binder '" + x.bound + "' bound twice on one quantifier path");
            ClausePtr inner = elaborate_core(x.inner, names, bound);
            return c_forall(x.bound, x.visibility, std::move(inner));
          },
          [&](const Conj& x) {
            std::set<std::string> left_bound = bound;
            std::set<std::string> right_bound = bound;
            ClausePtr left = elaborate_core(x.left, names, left_bound);
            ClausePtr right = elaborate_core(x.right, names, right_bound);
            return c_conj(std::move(left), std::move(right));
          },
      },
      c->node);
}

}  // namespace

GoalPtr elaborate_goal(const GoalPtr& surface, NameGen& names) {
  return elaborate_goal_impl(surface, names);
}

ClausePtr elaborate_clause(const ClausePtr& surface, NameGen& names) {
  if (surface == nullptr) throw InternalFault("null clause in elaboration");
  std::set<std::string> bound;
  ClausePtr out = elaborate_core(surface, names, bound);
  std::set<std::string> free = free_vars(out);
  if (!free.empty())
    throw ElaborateError("unbound variable '" + *free.begin() + "' in clause");
  return out;
}

}  // namespace avlang
