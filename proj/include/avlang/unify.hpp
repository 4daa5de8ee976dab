#pragma once
// First-order unification over flat terms and the substitution it builds.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>

#include "avlang/ast.hpp"

namespace avlang {

// Issues session-unique logic variables from a monotone counter.
class VarGen {
 public:
  LogicVar fresh(Visibility origin) { return LogicVar{++next_, origin}; }
  std::uint64_t issued() const { return next_.load(); }

 private:
  std::atomic<std::uint64_t> next_{0};
};

// Immutable binding map from logic-variable id to term. Extension returns a
// new value; existing bindings are never changed (monotone, acyclic).
class Substitution {
 public:
  const Term* lookup(std::uint64_t id) const {
    auto it = bindings_.find(id);
    return it == bindings_.end() ? nullptr : &it->second;
  }
  bool bound(std::uint64_t id) const { return bindings_.count(id) != 0; }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::uint64_t, Term>& bindings() const { return bindings_; }

  Substitution extend(std::uint64_t id, Term value) const;

  // Follows binding chains until a non-variable term or an unbound variable.
  Term resolve(Term t) const;

 private:
  std::map<std::uint64_t, Term> bindings_;
};

// Most general unifier of two flat terms under an existing substitution.
// Failure is a value (nullopt). A named Var on either side is an internal
// fault: the engine must instantiate binders before unifying.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s);

// Unifies two calls: name and arity must match, then arguments pairwise
// left to right.
std::optional<Substitution> unify_call(const Call& pattern, const Call& call,
                                       const Substitution& s);

}  // namespace avlang
