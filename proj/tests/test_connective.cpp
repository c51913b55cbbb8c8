#include <catch2/catch_amalgamated.hpp>

#include "culogic/connective.hpp"
#include "culogic/generators.hpp"
#include "culogic/hyperdoctrine.hpp"

using namespace culogic;
using CE = ConnectiveExpr;
using VK = ClassifierVerdict::Kind;

namespace {

const Carrier pt = Carrier::atoms({"a"});

Value ev(const CE& e, std::initializer_list<Value> point) {
  return e.eval(std::vector<Value>(point));
}

} // namespace

TEST_CASE("exact evaluation of the connective grammar", "[connective]") {
  CE neg = CE::negate(CE::var(1));
  CHECK(ev(neg, {Value::one()}) == Value::zero());
  CHECK(ev(neg, {Value(1, 2)}) == Value(1, 2));

  CE mn = CE::min_of(CE::var(1), CE::var(2));
  CHECK(ev(mn, {Value::zero(), Value(3, 4)}) == Value::zero());

  CE ts = CE::tsub(CE::var(1), CE::var(2));
  CHECK(ev(ts, {Value(1, 2), Value(1, 2)}) == Value::zero());
  CHECK(ev(ts, {Value::one(), Value(1, 2)}) == Value(1, 2));

  CE ta = CE::tadd(CE::var(1), CE::var(2));
  CHECK(ev(ta, {Value(2, 3), Value(2, 3)}) == Value::one());
  CHECK(ev(CE::scale(Value(1, 2), CE::var(1)), {Value(1, 3)}) == Value(1, 6));
  CHECK(ev(CE::constant(Value(1, 5)), {Value::one()}) == Value(1, 5));

  CHECK_THROWS_AS(ev(CE::var(3), {Value::one()}), Error);
}

TEST_CASE("expression parser handles the CLI syntax", "[connective]") {
  CHECK(ev(CE::parse("1-x"), {Value(1, 4)}) == Value(3, 4));
  CHECK(ev(CE::parse("min(x, y)"), {Value(1, 2), Value(1, 3)}) == Value(1, 3));
  CHECK(ev(CE::parse("max(x,y)"), {Value(1, 2), Value(1, 3)}) == Value(1, 2));
  CHECK(ev(CE::parse("x -. y"), {Value::one(), Value(1, 2)}) == Value(1, 2));
  CHECK(ev(CE::parse("x +. y"), {Value(1, 2), Value(1, 4)}) == Value(3, 4));
  CHECK(ev(CE::parse("1/2*x"), {Value(1, 2)}) == Value(1, 4));
  CHECK(ev(CE::parse("1/2 * (x +. y)"), {Value(1, 2), Value(1, 2)}) == Value(1, 2));
  CHECK(ev(CE::parse("1-(x -. y)"), {Value::one(), Value::one()}) == Value::one());
  CHECK(ev(CE::parse("min(1-x, z)"),
           {Value::one(), Value::one(), Value(1, 3)}) == Value::zero());
  CHECK(CE::parse("x3").max_var() == 3);
  CHECK(CE::parse("1/4").constant_fold() == Value(1, 4));

  CHECK_THROWS_AS(CE::parse("min(x"), Error);
  CHECK_THROWS_AS(CE::parse("foo(x)"), Error);
  CHECK_THROWS_AS(CE::parse("2-x"), Error);
  CHECK_THROWS_AS(CE::parse("x + y"), Error);
  CHECK_THROWS_AS(CE::parse("3/2"), Error);  // constants live in [0,1]

  // Round trip through the canonical rendering.
  for (auto s : {"min(x, y)", "1-(x)", "(x -. y)", "(x +. 1/2*(y))"}) {
    CE e = CE::parse(s);
    CHECK(CE::parse(e.str()).str() == e.str());
  }
}

TEST_CASE("classify certifies the stratified fragment", "[connective]") {
  auto v = classify(CE::parse("min(x,y)"), 2);
  CHECK(v.kind == VK::Preserves);
  CHECK(v.certified);
  // Zero strata of min: exactly those with some pinned coordinate.
  for (const auto& s : v.strata) {
    bool expect_zero = s.mask != 0;
    CHECK((s.status == StratumStatus::AllZero) == expect_zero);
  }

  CHECK(classify(CE::parse("max(x,y)"), 2).certified);
  CHECK(classify(CE::parse("x +. y"), 2).certified);
  CHECK(classify(CE::parse("1/2*x"), 2).certified);
  CHECK(classify(CE::parse("0*x"), 1).certified);
  CHECK(classify(CE::parse("min(max(x,y), x3)"), 3).kind == VK::Preserves);
  CHECK(classify(CE::parse("1/4"), 1).kind == VK::Preserves);
}

TEST_CASE("classify finds genuine violations for negate and tsub", "[connective]") {
  auto neg = classify(CE::parse("1-x"), 1);
  REQUIRE(neg.kind == VK::Violates);
  CHECK(neg.witness_p == std::vector<Value>{Value::one()});
  CHECK(CE::parse("1-x").eval(neg.witness_q) > Value::zero());
  // Witnesses share a zero pattern by construction.
  for (std::size_t i = 0; i < neg.witness_p.size(); ++i)
    CHECK(neg.witness_p[i].is_zero() == neg.witness_q[i].is_zero());

  auto ts = classify(CE::parse("x -. y"), 2);
  REQUIRE(ts.kind == VK::Violates);
  CE u = CE::parse("x -. y");
  CHECK(u.eval(ts.witness_p).is_zero());
  CHECK(u.eval(ts.witness_q) > Value::zero());
}

TEST_CASE("degenerate negate and tsub stay certified", "[connective]") {
  // tsub against a vanishing right side degrades to the left side.
  auto v = classify(CE::parse("x -. 0*y"), 2);
  CHECK(v.kind == VK::Preserves);
  CHECK(v.certified);
  // 0 -. e and 1-(0*x) are constant-like.
  CHECK(classify(CE::parse("0*x -. y"), 2).kind == VK::Preserves);
  CHECK(classify(CE::parse("1-(0*x)"), 1).kind == VK::Preserves);
  // tsub(x,x) vanishes identically but is outside the certified fragment:
  // sampling alone reports a grid-bounded preserves.
  auto diag = classify(CE::parse("x -. x"), 1);
  CHECK(diag.kind == VK::Preserves);
  CHECK_FALSE(diag.certified);
}

TEST_CASE("monotone compounds with u(0)=0 always preserve", "[connective]") {
  // All depth <= 2 expressions over min/max/tadd/scale and variables.
  std::vector<CE> depth1 = {CE::var(1), CE::var(2), CE::var(3)};
  std::vector<CE> depth2;
  for (const auto& a : depth1)
    for (const auto& b : depth1) {
      depth2.push_back(CE::min_of(a, b));
      depth2.push_back(CE::max_of(a, b));
      depth2.push_back(CE::tadd(a, b));
      depth2.push_back(CE::scale(Value(1, 2), a));
    }
  std::vector<Value> origin(3, Value::zero());
  for (const auto& e : depth2) {
    REQUIRE(e.eval(origin).is_zero());
    auto v = classify(e, 3);
    CHECK(v.kind == VK::Preserves);
    CHECK(v.certified);
  }
}

TEST_CASE("symbolic strata agree with dense sampling", "[connective]") {
  Rng rng(21);
  auto random_monotone = [&](auto&& self, std::size_t depth) -> CE {
    if (depth == 0 || rng.below(4) == 0) return CE::var(1 + rng.below(3));
    switch (rng.below(4)) {
      case 0: return CE::min_of(self(self, depth - 1), self(self, depth - 1));
      case 1: return CE::max_of(self(self, depth - 1), self(self, depth - 1));
      case 2: return CE::tadd(self(self, depth - 1), self(self, depth - 1));
      default: return CE::scale(Value(1, 2), self(self, depth - 1));
    }
  };
  for (int t = 0; t < 40; ++t) {
    CE e = random_monotone(random_monotone, 3);
    auto symbolic = classify(e, 3);
    REQUIRE(symbolic.certified);
    long long steps = 4;
    for (const auto& s : symbolic.strata) {
      bool saw_zero = false, saw_nonzero = false;
      std::vector<long long> odo;
      std::vector<std::size_t> free_vars;
      for (std::size_t i = 0; i < 3; ++i)
        if (!((s.mask >> i) & 1)) { free_vars.push_back(i); odo.push_back(1); }
      bool more = true;
      while (more) {
        std::vector<Value> point(3, Value::zero());
        for (std::size_t j = 0; j < free_vars.size(); ++j)
          point[free_vars[j]] = Value(odo[j], steps);
        (e.eval(point).is_zero() ? saw_zero : saw_nonzero) = true;
        more = false;
        for (std::size_t j = free_vars.size(); j-- > 0;) {
          if (odo[j] < steps) { ++odo[j]; more = true; break; }
          odo[j] = 1;
        }
      }
      if (s.status == StratumStatus::AllZero) {
        CHECK(saw_zero);
        CHECK_FALSE(saw_nonzero);
      } else {
        CHECK_FALSE(saw_zero);
      }
    }
  }
}

TEST_CASE("preserving connectives transfer isomorphisms", "[connective]") {
  Rng rng(22);
  std::vector<CE> table = {CE::parse("min(x,y)"), CE::parse("max(x,y)"),
                           CE::parse("x +. y"), CE::parse("1/2*x"),
                           CE::parse("min(x +. y, z)")};
  for (const auto& u : table) {
    REQUIRE(classify(u, 3).kind == VK::Preserves);
    for (int t = 0; t < 40; ++t) {
      Carrier x = gen::carrier(rng, 4, 1);
      std::vector<Predicate> phi, psi;
      for (int i = 0; i < 3; ++i) {
        // An isomorphic pair: same zero pattern, other values shuffled.
        Predicate a = gen::predicate(rng, x);
        Predicate b = Predicate::tabulate(x, [&](std::size_t j) {
          return a.at(j).is_zero() ? Value::zero() : gen::positive_value(rng);
        });
        phi.push_back(a);
        psi.push_back(b);
        REQUIRE(predicates_iso(a, b));
      }
      CHECK(predicates_iso(apply_connective(u, phi), apply_connective(u, psi)));
    }
  }
}

TEST_CASE("apply_connective is pointwise", "[connective]") {
  Predicate quarter(pt, {Value(1, 4)});
  CHECK(apply_connective(CE::parse("x +. y"), {quarter, quarter}).at(0) ==
        Value(1, 2));
  CHECK(apply_connective(CE::parse("min(x,y)"), {quarter, top(pt)}).at(0)
            .is_zero());
  CHECK(apply_connective(CE::parse("1-x"), {top(pt)}) == bottom(pt));
}

TEST_CASE("demonstrate_violation realises witnesses as predicates", "[connective]") {
  SECTION("negate with the canonical pair (1, 1/2)") {
    auto demo = demonstrate_violation(CE::parse("1-x"), {Value::one()},
                                      {Value(1, 2)}, pt);
    CHECK(demo.inputs_pairwise_iso);
    CHECK_FALSE(demo.outputs_iso);
    CHECK(demo.phi[0].at(0) == Value::one());
    CHECK(demo.phi_prime[0].at(0) == Value(1, 2));
  }
  SECTION("tsub with the canonical pair") {
    auto demo = demonstrate_violation(CE::parse("x -. y"),
                                      {Value(1, 2), Value(1, 2)},
                                      {Value::one(), Value(1, 2)}, pt);
    CHECK(demo.inputs_pairwise_iso);
    CHECK_FALSE(demo.outputs_iso);
  }
  SECTION("classifier witnesses always demonstrate") {
    for (auto s : {"1-x", "x -. y", "min(1-x, y)", "x -. min(y,z)"}) {
      CE u = CE::parse(s);
      auto v = classify(u, std::max<std::size_t>(1, u.max_var()));
      REQUIRE(v.kind == VK::Violates);
      auto demo = demonstrate_violation(u, v.witness_p, v.witness_q, pt);
      CHECK(demo.inputs_pairwise_iso);
      CHECK_FALSE(demo.outputs_iso);
    }
  }
  SECTION("invalid pairs are rejected") {
    CHECK_THROWS_AS(demonstrate_violation(CE::parse("min(x,y)"),
                                          {Value::zero(), Value(1, 2)},
                                          {Value::zero(), Value(1, 3)}, pt),
                    PreconditionError);
    CHECK_THROWS_AS(demonstrate_violation(CE::parse("1-x"), {Value::one()},
                                          {Value::zero()}, pt),
                    PreconditionError);
    CHECK_THROWS_AS(demonstrate_violation(CE::parse("1-x"), {Value::one()},
                                          {Value(1, 2)}, Carrier::atoms({})),
                    PreconditionError);
  }
}

TEST_CASE("arity guards", "[connective]") {
  CHECK_THROWS_AS(classify(CE::parse("min(x,y)"), 1), Error);
  CHECK_THROWS_AS(classify(CE::parse("x"), 1, Rat(1, 3)), Error);
  CHECK_THROWS_AS(apply_connective(CE::parse("min(x,y)"),
                                   {Predicate::constant(pt, Value::zero())}),
                  Error);
}
