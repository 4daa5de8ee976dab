#include "avlang/unify.hpp"
#include "doctest.h"
#include "support/gen.hpp"

using namespace avlang;

namespace {

Term lv(std::uint64_t id, Visibility origin = Visibility::Visible) {
  return Term{LogicVar{id, origin}};
}

}  // namespace

TEST_CASE("unifying a variable with a constant binds it") {
  Substitution s;
  auto r = unify(lv(1), atom("a"), s);
  REQUIRE(r.has_value());
  CHECK(r->resolve(lv(1)) == atom("a"));
}

TEST_CASE("ground terms unify only when equal") {
  Substitution s;
  CHECK(unify(atom("a"), atom("a"), s).has_value());
  CHECK_FALSE(unify(atom("a"), atom("b"), s).has_value());
  CHECK(unify(num(3), num(3), s).has_value());
  CHECK_FALSE(unify(num(3), str("3"), s).has_value());
  CHECK(unify(str("$10K"), str("$10K"), s).has_value());
}

TEST_CASE("variable-variable unification links younger to older") {
  Substitution s;
  auto r = unify(lv(5), lv(2), s);
  REQUIRE(r.has_value());
  CHECK(r->bound(5));
  CHECK_FALSE(r->bound(2));
  // Same pair, either order.
  auto r2 = unify(lv(2), lv(5), s);
  REQUIRE(r2.has_value());
  CHECK(r2->bound(5));
}

TEST_CASE("unifying a variable with itself adds nothing") {
  Substitution s;
  auto r = unify(lv(3), lv(3), s);
  REQUIRE(r.has_value());
  CHECK(r->size() == 0);
}

TEST_CASE("resolve follows chains to the end") {
  // L1 -> L2, L2 -> 5.
  Substitution chain;
  chain = chain.extend(1, lv(2));
  chain = chain.extend(2, num(5));
  CHECK(chain.resolve(lv(1)) == num(5));
  CHECK(chain.resolve(lv(2)) == num(5));
  CHECK(chain.resolve(lv(3)) == lv(3));
  CHECK(chain.resolve(atom("a")) == atom("a"));
}

TEST_CASE("bindings are never overwritten") {
  Substitution s = Substitution{}.extend(1, atom("a"));
  CHECK_THROWS_AS(s.extend(1, atom("b")), InternalFault);
}

TEST_CASE("a named variable reaching unify is a fault") {
  Substitution s;
  CHECK_THROWS_AS(unify(var("x"), atom("a"), s), InternalFault);
  CHECK_THROWS_AS(unify(atom("a"), var("x"), s), InternalFault);
}

TEST_CASE("unify through an existing substitution") {
  Substitution s = Substitution{}.extend(1, atom("a"));
  CHECK_FALSE(unify(lv(1), atom("b"), s).has_value());
  auto r = unify(lv(1), lv(2), s);
  REQUIRE(r.has_value());
  CHECK(r->resolve(lv(2)) == atom("a"));
}

TEST_CASE("call unification checks name and arity, then arguments in order") {
  Substitution s;
  CHECK_FALSE(unify_call(Call{"p", {}}, Call{"q", {}}, s).has_value());
  CHECK_FALSE(unify_call(Call{"p", {lv(1)}}, Call{"p", {}}, s).has_value());

  auto r = unify_call(Call{"p", {lv(1), lv(1)}}, Call{"p", {atom("a"), lv(2)}}, s);
  REQUIRE(r.has_value());
  CHECK(r->resolve(lv(2)) == atom("a"));  // threaded left to right

  CHECK_FALSE(
      unify_call(Call{"p", {lv(3), lv(3)}}, Call{"p", {atom("a"), atom("b")}}, s).has_value());
}

TEST_CASE("unification properties hold on random inputs") {
  testgen::Rng rng(41507);
  for (int i = 0; i < 300; ++i) {
    Substitution s = testgen::random_subst(rng);
    Term a = testgen::random_flat_term(rng);
    Term b = testgen::random_flat_term(rng);

    auto forward = unify(a, b, s);
    auto backward = unify(b, a, s);
    CHECK(forward.has_value() == backward.has_value());  // success commutes

    if (!forward) continue;
    // Soundness: both sides resolve to the same term afterwards.
    CHECK(forward->resolve(a) == forward->resolve(b));
    // Monotonicity: every prior binding survives unchanged.
    for (const auto& [id, value] : s.bindings()) {
      REQUIRE(forward->bound(id));
      CHECK(*forward->lookup(id) == value);
    }
    // Idempotence: resolving a resolved term is a fixpoint.
    Term once = forward->resolve(a);
    CHECK(forward->resolve(once) == once);
  }
}

TEST_CASE("fresh variables are unique and carry their origin") {
  VarGen gen;
  LogicVar a = gen.fresh(Visibility::Visible);
  LogicVar b = gen.fresh(Visibility::Blind);
  CHECK(a.id != b.id);
  CHECK(a.origin == Visibility::Visible);
  CHECK(b.origin == Visibility::Blind);
  CHECK(gen.issued() == 2);
}
