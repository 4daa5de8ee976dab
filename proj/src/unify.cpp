#include "avlang/unify.hpp"

#include <utility>

namespace avlang {

Substitution Substitution::extend(std::uint64_t id, Term value) const {
  if (bound(id)) throw InternalFault("substitution rebinding id " + std::to_string(id));
  Substitution out = *this;
  out.bindings_.emplace(id, std::move(value));
  return out;
}

Term Substitution::resolve(Term t) const {
  const LogicVar* lv = nullptr;
  while ((lv = std::get_if<LogicVar>(&t)) != nullptr) {
    auto it = bindings_.find(lv->id);
    if (it == bindings_.end()) break;
    t = it->second;
  }
  return t;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s) {
  Term x = s.resolve(a);
  Term y = s.resolve(b);
  if (std::holds_alternative<Var>(x) || std::holds_alternative<Var>(y))
    throw InternalFault("named variable reached unify");
  const LogicVar* lx = std::get_if<LogicVar>(&x);
  const LogicVar* ly = std::get_if<LogicVar>(&y);
  if (lx != nullptr && ly != nullptr) {
    if (lx->id == ly->id) return s;
    // Link the younger variable to the older one.
    const LogicVar& younger = lx->id > ly->id ? *lx : *ly;
    const LogicVar& older = lx->id > ly->id ? *ly : *lx;
    return s.extend(younger.id, Term{older});
  }
  if (lx != nullptr) return s.extend(lx->id, std::move(y));
  if (ly != nullptr) return s.extend(ly->id, std::move(x));
  if (x == y) return s;
  return std::nullopt;
}

std::optional<Substitution> unify_call(const Call& pattern, const Call& call,
                                       const Substitution& s) {
  if (pattern.name != call.name || pattern.args.size() != call.args.size()) return std::nullopt;
  Substitution acc = s;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    std::optional<Substitution> next = unify(pattern.args[i], call.args[i], acc);
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

}  // namespace avlang
