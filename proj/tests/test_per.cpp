#include <catch2/catch_amalgamated.hpp>

#include "culogic/laws.hpp"
#include "culogic/per.hpp"

using namespace culogic;

namespace {

const Carrier ab = Carrier::atoms({"a", "b"});

Per discrete_per(const Carrier& x) { return Per(x, eq_predicate(x)); }

Predicate rel_table(const Carrier& x, const Carrier& y,
                    std::vector<Value> values) {
  return Predicate(Carrier::product(x, y), std::move(values));
}

} // namespace

TEST_CASE("per axioms via sequents", "[per]") {
  SECTION("discrete equality is an equivalence relation") {
    CHECK(is_per(ab, eq_predicate(ab)));
    CHECK(is_equiv_rel(ab, eq_predicate(ab)));
  }
  SECTION("a finite metric is an equivalence relation") {
    Rng rng(1);
    FinMetric m = gen::metric(rng, 3, 3);
    CHECK(is_equiv_rel(m.carrier(), m.d()));
  }
  SECTION("asymmetric zeros are not a per") {
    Predicate r = rel_table(ab, ab,
                            {Value::zero(), Value::zero(),   // a~a, a~b
                             Value::one(), Value::zero()});  // b~a, b~b
    CHECK_FALSE(is_per(ab, r));
    CHECK_FALSE(check_per_axioms(ab, r).symmetric);
    CHECK_THROWS_AS(Per(ab, r), Error);
  }
}

TEST_CASE("fast constructor checks agree with the sequent route", "[per]") {
  Rng rng(77);
  for (int t = 0; t < 150; ++t) {
    Carrier x = gen::carrier(rng, 3, 1);
    Predicate r = gen::predicate(rng, Carrier::product(x, x));
    CHECK(detail::fast_per_check(x, r) == check_per_axioms(x, r).per());
  }
  for (int t = 0; t < 80; ++t) {
    Per p = gen::per(rng, 3);
    Per q = gen::per(rng, 3);
    Predicate cand = gen::predicate(rng, Carrier::product(p.carrier(), q.carrier()));
    CHECK(detail::fast_functional_check(p, q, cand) ==
          check_functional_axioms(p, q, cand).all());
    Predicate pred = gen::predicate(rng, p.carrier());
    CHECK(detail::fast_strict_check(p, pred) == check_strict_axioms(p, pred).all());
  }
}

TEST_CASE("composition of functional relations", "[per]") {
  // X={a}, Y={u,v}, Z={s}, all discrete.
  Carrier xa = Carrier::atoms({"a"});
  Carrier yuv = Carrier::atoms({"u", "v"});
  Carrier zs = Carrier::atoms({"s"});
  Per X = discrete_per(xa), Y = discrete_per(yuv), Z = discrete_per(zs);

  FunctionalRelation F(X, Y, rel_table(xa, yuv, {Value::zero(), Value::one()}));
  FunctionalRelation G(Y, Z, rel_table(yuv, zs, {Value::zero(), Value::zero()}));
  FunctionalRelation FG = F.then(G);
  CHECK(FG.rel_at(0, 0).is_zero());

  SECTION("identities are units") {
    CHECK(morphism_eq(F.then(identity_morphism(Y)), F));
    CHECK(morphism_eq(identity_morphism(X).then(F), F));
  }
  SECTION("associativity on random chains") {
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
      Per p = gen::per(rng, 3);
      Per q = gen::per(rng, 3);
      Per s = gen::per(rng, 3);
      Per u = gen::per(rng, 3);
      FunctionalRelation f = gen::morphism(rng, p, q);
      FunctionalRelation g = gen::morphism(rng, q, s);
      FunctionalRelation h = gen::morphism(rng, s, u);
      FunctionalRelation left = f.then(g).then(h);
      FunctionalRelation right = f.then(g.then(h));
      CHECK(morphism_eq(left, right));
      CHECK(morphism_eq(right, left));
      // Closure: every composite passes the four sequents.
      CHECK(check_functional_axioms(left.source(), left.target(), left.rel()).all());
    }
  }
  SECTION("carrier mismatch is an error") {
    CHECK_THROWS_AS(G.then(F), Error);
  }
}

TEST_CASE("morphism equality is zero-set equality", "[per]") {
  Rng rng(6);
  Per p = gen::per(rng, 3);
  Per q = gen::per(rng, 3);
  FunctionalRelation f = gen::morphism(rng, p, q);
  CHECK(morphism_eq(f, f));

  // Perturbing nonzero values keeps the morphism.
  Predicate fuzzed = Predicate::tabulate(f.rel().carrier(), [&](std::size_t i) {
    return f.rel().at(i).is_zero() ? Value::zero() : gen::positive_value(rng);
  });
  FunctionalRelation g(p, q, fuzzed);
  CHECK(morphism_eq(f, g));
  CHECK(morphism_eq(g, f));  // the derived converse

  // One direction implies the other on random pairs.
  for (int t = 0; t < 40; ++t) {
    Per a = gen::per(rng, 3);
    Per b = gen::per(rng, 3);
    FunctionalRelation h = gen::morphism(rng, a, b);
    FunctionalRelation k = gen::morphism(rng, a, b);
    if (morphism_eq(h, k)) CHECK(morphism_eq(k, h));
  }

  // Distinct graphs differ.
  Carrier xa = Carrier::atoms({"a"});
  Carrier yuv = Carrier::atoms({"u", "v"});
  Per X = discrete_per(xa), Y = discrete_per(yuv);
  FunctionalRelation to_u(X, Y, rel_table(xa, yuv, {Value::zero(), Value::one()}));
  FunctionalRelation to_v(X, Y, rel_table(xa, yuv, {Value::one(), Value::zero()}));
  CHECK_FALSE(morphism_eq(to_u, to_v));
}

TEST_CASE("monomorphism test", "[per]") {
  Carrier two = Carrier::atoms({"a", "b"});
  Per X = discrete_per(two);
  CHECK(is_mono(identity_morphism(X)));

  // The constant map from a two-point discrete ER to the point.
  Carrier u = Carrier::atoms({"u"});
  Per pt = discrete_per(u);
  FunctionalRelation constant(X, pt,
                              rel_table(two, u, {Value::zero(), Value::zero()}));
  CHECK_FALSE(is_mono(constant));
}

TEST_CASE("subobject correspondence", "[per]") {
  Rng rng(7);
  SECTION("strict top gives the identity subobject") {
    Per p = gen::per(rng, 3);
    auto [sub, inc] = sub_from_strict(strict_top(p));
    CHECK(morphism_eq(inc, identity_morphism(p)));
    CHECK(morphism_eq(identity_morphism(p), inc));
    CHECK(is_mono(inc));
  }
  SECTION("a single live point") {
    Per p = discrete_per(ab);
    StrictPredicate phi(p, Predicate(ab, {Value::zero(), Value(1, 2)}));
    auto [sub, inc] = sub_from_strict(phi);
    CHECK(sub.rel_at(0, 0).is_zero());
    CHECK_FALSE(sub.rel_at(1, 1).is_zero());
    CHECK(is_mono(inc));
    StrictPredicate back = strict_from_mono(inc);
    CHECK(strict_iso(back, phi));
  }
  SECTION("identity mono recovers strict top") {
    Per p = gen::per(rng, 3);
    StrictPredicate psi = strict_from_mono(identity_morphism(p));
    CHECK(strict_iso(psi, strict_top(p)));
  }
  SECTION("round trips on random strict predicates") {
    for (int t = 0; t < 60; ++t) {
      Per p = gen::per(rng, 3);
      StrictPredicate phi = gen::strict_pred(rng, p);
      auto [sub, inc] = sub_from_strict(phi);
      CHECK(is_mono(inc));
      CHECK(strict_iso(strict_from_mono(inc), phi));
    }
  }
  SECTION("non-monos are rejected") {
    Per X = discrete_per(ab);
    Carrier u = Carrier::atoms({"u"});
    Per pt = discrete_per(u);
    FunctionalRelation constant(X, pt,
                                rel_table(ab, u, {Value::zero(), Value::zero()}));
    CHECK_THROWS_AS(strict_from_mono(constant), PreconditionError);
  }
}

TEST_CASE("strict quantifiers along morphisms", "[per]") {
  Rng rng(8);
  SECTION("identity acts as identity") {
    for (int t = 0; t < 30; ++t) {
      Per p = gen::per(rng, 3);
      StrictPredicate phi = gen::strict_pred(rng, p);
      CHECK(strict_iso(strict_exists(identity_morphism(p), phi), phi));
      CHECK(strict_iso(strict_pullback(identity_morphism(p), phi), phi));
    }
  }
  SECTION("frobenius for strict fibers") {
    for (int t = 0; t < 40; ++t) {
      Per y = gen::per(rng, 2);
      Per z = gen::per(rng, 2);
      FunctionalRelation pi = per_proj_left(y, z);
      StrictPredicate alpha = gen::strict_pred(rng, y);
      StrictPredicate beta = gen::strict_pred(rng, pi.source());
      StrictPredicate lhs =
          strict_exists(pi, strict_meet(strict_pullback(pi, alpha), beta));
      StrictPredicate rhs = strict_meet(alpha, strict_exists(pi, beta));
      CHECK(strict_iso(lhs, rhs));
    }
  }
  SECTION("beck-chevalley on the canonical strict square") {
    // Pullback of [F] : X -> Z along [G] : Y -> Z, with the apex
    // (X x Y, ~P), ~P = x~x' /\ y~y' /\ E z (F(x,z) /\ G(y,z)).
    for (int t = 0; t < 25; ++t) {
      Per x = discrete_per(gen::carrier(rng, 2, 2));
      Per y = discrete_per(gen::carrier(rng, 2, 2));
      Per z = discrete_per(gen::carrier(rng, 2, 2));
      FunctionalRelation f = gen::morphism(rng, x, z);
      FunctionalRelation g = gen::morphism(rng, y, z);

      Carrier xy = Carrier::product(x.carrier(), y.carrier());
      Carrier sq = Carrier::product(xy, xy);
      Predicate apex_rel = Predicate::tabulate(sq, [&](std::size_t i) {
        auto [l, r] = sq.unpair(i);
        auto [x1, y1] = xy.unpair(l);
        auto [x2, y2] = xy.unpair(r);
        Value glue = Value::one();
        for (std::size_t zz = 0; zz < z.carrier().size(); ++zz)
          glue = min(glue, max(f.rel_at(x1, zz), g.rel_at(y1, zz)));
        return max(max(x.rel_at(x1, x2), y.rel_at(y1, y2)), glue);
      });
      Per apex(xy, apex_rel);

      Carrier pc = Carrier::product(xy, x.carrier());
      Predicate p_rel = Predicate::tabulate(pc, [&](std::size_t i) {
        auto [l, xr] = pc.unpair(i);
        auto [x1, y1] = xy.unpair(l);
        (void)y1;
        return max(apex.rel_at(l, l), x.rel_at(x1, xr));
      });
      FunctionalRelation P(apex, x, p_rel);
      Carrier qc = Carrier::product(xy, y.carrier());
      Predicate q_rel = Predicate::tabulate(qc, [&](std::size_t i) {
        auto [l, yr] = qc.unpair(i);
        auto [x1, y1] = xy.unpair(l);
        (void)x1;
        return max(apex.rel_at(l, l), y.rel_at(y1, yr));
      });
      FunctionalRelation Q(apex, y, q_rel);

      StrictPredicate phi = gen::strict_pred(rng, y);
      StrictPredicate via_apex = strict_exists(P, strict_pullback(Q, phi));
      StrictPredicate via_base = strict_pullback(f, strict_exists(g, phi));
      CHECK(strict_iso(via_apex, via_base));
    }
  }
}

TEST_CASE("right adjoint along reflexive projections", "[per]") {
  Rng rng(9);
  SECTION("strict top is fixed") {
    Per y = gen::per(rng, 3);
    Per z = Per(gen::equiv_rel(rng, 3));
    StrictPredicate result = strict_forall_proj(y, z, strict_top(per_product(y, z)));
    CHECK(strict_iso(result, strict_top(y)));
  }
  SECTION("one nonzero kills the forall") {
    Per y = discrete_per(Carrier::atoms({"a"}));
    Per z = discrete_per(Carrier::atoms({"u", "v"}));
    Per prod = per_product(y, z);
    StrictPredicate phi(prod,
                        Predicate(prod.carrier(), {Value::zero(), Value(1, 2)}));
    StrictPredicate result = strict_forall_proj(y, z, phi);
    CHECK_FALSE(result.pred().at(0).is_zero());
  }
  SECTION("adjunction over all 0/1 strict predicates, 2x2") {
    Per y = discrete_per(ab);
    Per z = discrete_per(Carrier::atoms({"u", "v"}));
    Per prod = per_product(y, z);
    FunctionalRelation pi = per_proj_left(y, z);
    for (std::size_t pm = 0; pm < 16; ++pm) {
      Predicate pp = Predicate::tabulate(prod.carrier(), [&](std::size_t i) {
        return (pm >> i) & 1 ? Value::zero() : Value::one();
      });
      StrictPredicate phi(prod, pp);
      for (std::size_t qm = 0; qm < 4; ++qm) {
        Predicate qq = Predicate::tabulate(y.carrier(), [&](std::size_t i) {
          return (qm >> i) & 1 ? Value::zero() : Value::one();
        });
        StrictPredicate psi(y, qq);
        CHECK(strict_leq(strict_pullback(pi, psi), phi) ==
              strict_leq(psi, strict_forall_proj(y, z, phi)));
      }
    }
  }
  SECTION("non-reflexive second factor is rejected") {
    Per y = discrete_per(ab);
    Per dead(ab, Predicate::constant(Carrier::product(ab, ab), Value::one()));
    StrictPredicate phi = strict_bottom(per_product(y, dead));
    CHECK_THROWS_AS(strict_forall_proj(y, dead, phi), Error);
  }
}

TEST_CASE("relations between equivalence relations are automatically strict",
          "[per]") {
  Rng rng(10);
  for (int t = 0; t < 60; ++t) {
    Per e1 = Per(gen::equiv_rel(rng, 3));
    Per e2 = Per(gen::equiv_rel(rng, 3));
    Predicate cand =
        gen::predicate(rng, Carrier::product(e1.carrier(), e2.carrier()));
    CHECK(check_functional_axioms(e1, e2, cand).strict);
  }
}
