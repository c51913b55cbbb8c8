#include <catch2/catch_amalgamated.hpp>

#include "culogic/generators.hpp"
#include "culogic/predicate.hpp"
#include "support/oracles.hpp"

using namespace culogic;

namespace {

Predicate pred(const Carrier& x, std::vector<Value> vs) {
  return Predicate(x, std::move(vs));
}

const Carrier ab = Carrier::atoms({"a", "b"});
const Carrier abc = Carrier::atoms({"a", "b", "c"});

} // namespace

TEST_CASE("carrier enumeration is deterministic", "[predicate]") {
  CHECK(ab.size() == 2);
  CHECK(ab.element_name(0) == "a");
  CHECK(Carrier::unit().element_name(0) == "()");
  Carrier p = Carrier::product(ab, abc);
  CHECK(p.size() == 6);
  CHECK(p.element_name(p.pair_index(1, 2)) == "(b,c)");
  CHECK(Carrier::atoms({}).size() == 0);
  CHECK_THROWS_AS(Carrier::atoms({"a", "a"}), Error);
  CHECK(Carrier::product(ab, abc) == Carrier::product(ab, abc));
  CHECK(Carrier::product(ab, abc) != Carrier::product(abc, ab));
}

TEST_CASE("zero_set scans the table exactly", "[predicate]") {
  CHECK(zero_set(pred(ab, {Value::zero(), Value::zero()})) ==
        std::vector<std::size_t>{0, 1});
  CHECK(zero_set(pred(ab, {Value::one(), Value::one()})).empty());
  CHECK(zero_set(pred(abc, {Value::zero(), Value(1, 2), Value::one()})) ==
        std::vector<std::size_t>{0});
}

TEST_CASE("leq decides zero-set inclusion with a canonical modulus", "[predicate]") {
  Predicate alpha = pred(abc, {Value::zero(), Value(1, 2), Value::one()});
  Predicate beta = pred(abc, {Value::zero(), Value::zero(), Value(1, 5)});

  auto v = leq(alpha, beta);
  REQUIRE(v.holds);
  REQUIRE(v.modulus);
  // Delta is 1/2 below 1/5 and 1 from 1/5 up.
  for (const Rat& eps : v.modulus->grid()) {
    Rat expected = eps < Rat(1, 5) ? Rat(1, 2) : Rat(1, 1);
    CHECK((*v.modulus)(eps) == expected);
  }
  CHECK(verify_modulus(*v.modulus, alpha, beta));

  auto reversed = leq(beta, alpha);
  CHECK_FALSE(reversed.holds);
  REQUIRE(reversed.witness);
  CHECK(*reversed.witness == 1);  // b has beta = 0 but alpha = 1/2

  // Anything is below top (constant zero).
  Predicate top0 = Predicate::constant(abc, Value::zero());
  CHECK(leq(alpha, top0).holds);

  Carrier other = Carrier::atoms({"x"});
  CHECK_THROWS_AS(leq(alpha, Predicate::constant(other, Value::zero())), Error);
}

TEST_CASE("leq agrees with both independent oracles", "[predicate]") {
  Rng rng(2026);
  for (int t = 0; t < 400; ++t) {
    Carrier x = gen::carrier(rng, 6);
    Predicate a = gen::predicate(rng, x);
    Predicate b = gen::predicate(rng, x);
    bool got = leq(a, b).holds;
    CHECK(got == oracle::zero_inclusion(a, b));
    CHECK(got == oracle::leq_epsilon_delta(a, b));
  }
}

TEST_CASE("leq is a preorder on every fiber", "[predicate]") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    Carrier x = gen::carrier(rng, 5);
    Predicate a = gen::predicate(rng, x);
    Predicate b = gen::predicate(rng, x);
    Predicate c = gen::predicate(rng, x);
    CHECK(leq(a, a).holds);
    if (leq(a, b).holds && leq(b, c).holds) CHECK(leq(a, c).holds);
  }
}

TEST_CASE("moduli verify exhaustively on random holding pairs", "[predicate]") {
  Rng rng(99);
  int holding = 0;
  while (holding < 150) {
    Carrier x = gen::carrier(rng, 6);
    Predicate a = gen::predicate(rng, x);
    Predicate b = gen::predicate(rng, x);
    auto v = leq(a, b);
    if (!v.holds) continue;
    ++holding;
    REQUIRE(v.modulus);
    CHECK(verify_modulus(*v.modulus, a, b));
  }
}

TEST_CASE("empty carrier: every ordering holds vacuously", "[predicate]") {
  Carrier none = Carrier::atoms({});
  Predicate a(none, {});
  auto v = leq(a, a);
  CHECK(v.holds);
  REQUIRE(v.modulus);
  for (const Rat& eps : v.modulus->grid()) CHECK((*v.modulus)(eps) == Rat(1, 1));
}

TEST_CASE("derive_residual builds a verified monotone completion", "[predicate]") {
  SECTION("identity pair") {
    Predicate a = pred(ab, {Value(1, 3), Value(2, 3)});
    ResidualBound f = derive_residual(a, a);
    CHECK(verify_residual(f, a, a));
    // F(t) >= t on attained values.
    CHECK(f(Rat(1, 3)) >= Rat(1, 3));
    CHECK(f(Rat(2, 3)) >= Rat(2, 3));
  }
  SECTION("strict drop") {
    Predicate a = pred(ab, {Value::zero(), Value(1, 2)});
    Predicate b = pred(ab, {Value::zero(), Value(1, 4)});
    ResidualBound f = derive_residual(a, b);
    CHECK(f(Rat(0, 1)).is_zero());
    CHECK(f(Rat(1, 2)) >= Rat(1, 4));
    CHECK(verify_residual(f, a, b));
  }
  SECTION("singleton all-zero") {
    Carrier one = Carrier::atoms({"a"});
    Predicate z = Predicate::constant(one, Value::zero());
    ResidualBound f = derive_residual(z, z);
    CHECK(f(Rat(0, 1)).is_zero());
    CHECK(verify_residual(f, z, z));
  }
  SECTION("precondition violation is a distinct error") {
    Predicate a = pred(ab, {Value::zero(), Value::zero()});
    Predicate b = pred(ab, {Value::zero(), Value(1, 4)});
    CHECK_THROWS_AS(derive_residual(a, b), PreconditionError);
  }
}

TEST_CASE("residual bounds are increasing and verified on random pairs", "[predicate]") {
  Rng rng(1234);
  int holding = 0;
  while (holding < 120) {
    Carrier x = gen::carrier(rng, 6);
    Predicate a = gen::predicate(rng, x);
    Predicate b = gen::predicate(rng, x);
    if (!leq(a, b).holds) continue;
    ++holding;
    ResidualBound f = derive_residual(a, b);
    CHECK(verify_residual(f, a, b));
    const auto& pts = f.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i - 1].first < pts[i].first);
      CHECK(pts[i - 1].second <= pts[i].second);
    }
  }
}

TEST_CASE("both certificates exist for a holding judgment", "[predicate]") {
  // Round trip of the three-way characterisation: a holding ordering
  // yields a modulus and a residual bound, each independently valid.
  Rng rng(555);
  int holding = 0;
  while (holding < 100) {
    Carrier x = gen::carrier(rng, 5);
    Predicate a = gen::predicate(rng, x);
    Predicate b = gen::predicate(rng, x);
    auto v = leq(a, b);
    if (!v.holds) continue;
    ++holding;
    CHECK(verify_modulus(*v.modulus, a, b));
    CHECK(verify_residual(derive_residual(a, b), a, b));
  }
}

TEST_CASE("sequence characterisation agrees with leq", "[predicate]") {
  SECTION("holding pair") {
    Predicate a = pred(abc, {Value::zero(), Value(1, 2), Value::one()});
    Predicate b = pred(abc, {Value::zero(), Value::zero(), Value(1, 5)});
    CHECK(check_sequence_characterization(a, b, 64, 1));
  }
  SECTION("constant counterexample sequence") {
    Predicate a = pred(ab, {Value::zero(), Value::one()});
    Predicate b = pred(ab, {Value(1, 2), Value::one()});
    CHECK_FALSE(check_sequence_characterization(a, b, 64, 1));
  }
  SECTION("bottom has no sequence converging to truth") {
    Predicate bot = Predicate::constant(ab, Value::one());
    Rng rng(3);
    for (int t = 0; t < 20; ++t)
      CHECK(check_sequence_characterization(bot, gen::predicate(rng, ab), 64, t));
  }
  SECTION("random agreement with leq") {
    Rng rng(42);
    for (int t = 0; t < 200; ++t) {
      Carrier x = gen::carrier(rng, 6);
      Predicate a = gen::predicate(rng, x);
      Predicate b = gen::predicate(rng, x);
      CHECK(check_sequence_characterization(a, b, x.size() + 8, t) ==
            leq(a, b).holds);
    }
  }
}
