#include <catch2/catch_amalgamated.hpp>

#include "culogic/generators.hpp"
#include "culogic/interpreter.hpp"
#include "culogic/parser.hpp"
#include "support/naive_eval.hpp"

using namespace culogic;

namespace {

/// The two-element model used throughout: sort S = {a,b}, R = {a:0, b:1/3}.
Interpretation<UBackend> small_model() {
  Interpretation<UBackend> I;
  I.signature.add_sort("S");
  I.signature.add_relation("R", {"S"});
  Carrier s = Carrier::atoms({"a", "b"});
  I.sorts.emplace("S", s);
  I.relations.emplace("R", Predicate(Carrier::product(Carrier::unit(), s),
                                     {Value::zero(), Value(1, 3)}));
  return I;
}

} // namespace

TEST_CASE("terms interpret to projections and compositions", "[interpreter]") {
  Interpretation<UBackend> I;
  I.signature.add_sort("S");
  I.signature.add_function("f", {{"S"}, "S"});
  I.signature.add_function("g", {{"S"}, "S"});
  Carrier s = Carrier::atoms({"a", "b"});
  I.sorts.emplace("S", s);
  // f swaps, g is constant a.
  Carrier dom = Carrier::product(Carrier::unit(), s);
  I.functions.emplace("f", MapArrow(dom, s, {1, 0}));
  I.functions.emplace("g", MapArrow(dom, s, {0, 0}));
  validate_interpretation(I);

  Context ctx = {{"x", "S"}};
  MapArrow x = interpret_term(I, ctx, Term::var("x"));
  for (std::size_t i = 0; i < 2; ++i) CHECK(x.apply(i) == i);

  MapArrow fg = interpret_term(I, ctx, Term::app("f", {Term::app("g", {Term::var("x")})}));
  CHECK(fg.apply(0) == 1);  // f(g(a)) = f(a) = b
  CHECK(fg.apply(1) == 1);

  MapArrow f = interpret_term(I, ctx, Term::app("f", {Term::var("x")}));
  CHECK(f.apply(0) == 1);
  CHECK(f.apply(1) == 0);

  CHECK_THROWS_AS(interpret_term(I, ctx, Term::var("w")), Error);
}

TEST_CASE("shadowed variables resolve innermost", "[interpreter]") {
  Interpretation<UBackend> I = small_model();
  // E x:S. R(x) under an outer x: the inner binder wins; the formula is
  // closed in x, so the result is constant over the outer context.
  SequentAst s = parse_sequent(I.signature, "[x:S] E x:S. R(x) |- top");
  Predicate p = interpret_formula(I, s.context, s.lhs);
  CHECK(p.values() == std::vector<Value>{Value::zero(), Value::zero()});
}

TEST_CASE("quantifier clauses on the small model", "[interpreter]") {
  Interpretation<UBackend> I = small_model();
  Context empty;

  Predicate ex = interpret_formula(I, empty, f_exists("x", "S", f_rel("R", {Term::var("x")})));
  REQUIRE(ex.size() == 1);
  CHECK(ex.at(0) == Value::zero());  // min(0, 1/3)

  Predicate fa = interpret_formula(I, empty, f_forall("x", "S", f_rel("R", {Term::var("x")})));
  CHECK(fa.at(0) == Value(1, 3));  // max(0, 1/3)
}

TEST_CASE("equality clause gives the diagonal", "[interpreter]") {
  Interpretation<UBackend> I = small_model();
  Context ctx = {{"x", "S"}, {"y", "S"}};
  Predicate p = interpret_formula(I, ctx, f_eq(Term::var("x"), Term::var("y")));
  // Same enumeration as Eq on S x S.
  CHECK(p.values() == eq_predicate(I.sorts.at("S")).values());
}

TEST_CASE("check_sequent validity, moduli, countermodels", "[interpreter]") {
  Interpretation<UBackend> I = small_model();

  SequentAst symm = parse_sequent(I.signature, "[x:S, y:S] x = y |- y = x");
  auto v1 = check_sequent(I, symm);
  CHECK(v1.valid);
  REQUIRE(v1.modulus);

  SequentAst all = parse_sequent(I.signature, "top |- A x:S. R(x)");
  auto v2 = check_sequent(I, all);
  CHECK_FALSE(v2.valid);
  REQUIRE(v2.countermodel);
  CHECK(*v2.countermodel == "()");  // empty context: the unit point

  SequentAst some = parse_sequent(I.signature, "top |- E x:S. R(x)");
  CHECK(check_sequent(I, some).valid);

  SequentAst named = parse_sequent(I.signature, "[x:S] top |- R(x)");
  auto v3 = check_sequent(I, named);
  CHECK_FALSE(v3.valid);
  CHECK(*v3.countermodel == "x=b");

  // max with top (constant 0) is the identity; min would collapse to top.
  SequentAst bidi = parse_sequent(I.signature, "[x:S] R(x) -||- max(R(x), top)");
  CHECK(check_sequent(I, bidi).valid);

  SequentAst bad = parse_sequent(I.signature, "[x:S] R(x) -||- top");
  auto v4 = check_sequent(I, bad);
  CHECK_FALSE(v4.valid);
  CHECK(v4.failed_backward);
}

TEST_CASE("compositional interpreter agrees with the pointwise oracle", "[interpreter]") {
  Rng rng(31);
  int checked = 0;
  for (int t = 0; t < 250; ++t) {
    Signature sig = gen::signature(rng);
    Interpretation<UBackend> I = gen::model(rng, sig, 3);
    SequentAst s = gen::sequent(rng, sig, 3, /*allow_conn=*/true);
    for (const Formula* f : {&s.lhs, &s.rhs}) {
      Predicate got = interpret_formula(I, s.context, *f);
      std::vector<Value> want = oracle::naive_eval_all(I, s.context, *f);
      REQUIRE(got.values() == want);
      ++checked;
    }
  }
  CHECK(checked == 500);
}

TEST_CASE("interpretation is compositional for meet", "[interpreter]") {
  Rng rng(32);
  for (int t = 0; t < 50; ++t) {
    Signature sig = gen::signature(rng);
    Interpretation<UBackend> I = gen::model(rng, sig, 3);
    Context ctx = {};
    Formula a = gen::formula(rng, sig, ctx, 2, false);
    Formula b = gen::formula(rng, sig, ctx, 2, false);
    CHECK(interpret_formula(I, ctx, f_and(a, b)) ==
          meet(interpret_formula(I, ctx, a), interpret_formula(I, ctx, b)));
  }
}

TEST_CASE("validity is stable under iso replacement of relations", "[interpreter]") {
  Rng rng(33);
  for (int t = 0; t < 60; ++t) {
    Signature sig = gen::signature(rng);
    Interpretation<UBackend> I = gen::model(rng, sig, 3);
    // Replace every relation by an isomorphic one (same zeros, other
    // positive values).
    Interpretation<UBackend> J = I;
    for (auto& [name, p] : J.relations) {
      p = Predicate::tabulate(p.carrier(), [&](std::size_t i) {
        return p.at(i).is_zero() ? Value::zero() : gen::positive_value(rng);
      });
    }
    SequentAst s = gen::sequent(rng, sig, 3, /*allow_conn=*/false);
    CHECK(check_sequent(I, s).valid == check_sequent(J, s).valid);
  }
}

TEST_CASE("empty carriers follow the quantifier conventions", "[interpreter]") {
  Interpretation<UBackend> I;
  I.signature.add_sort("S");
  I.signature.add_relation("R", {"S"});
  Carrier s = Carrier::atoms({});
  I.sorts.emplace("S", s);
  I.relations.emplace("R", Predicate(Carrier::product(Carrier::unit(), s), {}));

  Context empty;
  Predicate ex = interpret_formula(I, empty, f_exists("x", "S", f_rel("R", {Term::var("x")})));
  CHECK(ex.at(0) == Value::one());
  Predicate fa = interpret_formula(I, empty, f_forall("x", "S", f_rel("R", {Term::var("x")})));
  CHECK(fa.at(0) == Value::zero());
}

TEST_CASE("interpretation validation catches shape errors", "[interpreter]") {
  Interpretation<UBackend> I = small_model();
  validate_interpretation(I);
  // Break the relation carrier.
  I.relations.at("R") = Predicate::constant(Carrier::atoms({"a", "b"}), Value::zero());
  CHECK_THROWS_AS(validate_interpretation(I), Error);
}
