#pragma once

#include <functional>
#include <string>
#include <vector>

#include "culogic/generators.hpp"
#include "culogic/serialize.hpp"

namespace culogic::gen {

/// A genuine finite metric of diameter <= 1: random positive symmetric
/// distances tightened by shortest-path closure, then capped.
inline FinMetric metric(Rng& rng, std::size_t max_size, std::size_t min_size = 1) {
  std::size_t n = min_size + rng.below(max_size - min_size + 1);
  Carrier c = atoms(n, "m");
  static const Rat pool[] = {Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(2, 3),
                             Rat(3, 4), Rat(1, 1), Rat(1, 5), Rat(9, 10)};
  std::vector<Rat> d(n * n, Rat(0, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat v = pool[rng.below(8)];
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  // Shortest-path closure restores the triangle inequality exactly.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  Carrier sq = Carrier::product(c, c);
  Predicate table = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [a, b] = sq.unpair(i);
    return Value(min(d[a * n + b], Rat(1, 1)));
  });
  return FinMetric(c, std::move(table));
}

/// A pseudometric: a metric on blocks, lifted through a random surjection
/// (so distinct points may sit at distance 0).
inline FinPseudoMetric pseudometric(Rng& rng, std::size_t max_size) {
  FinMetric base = metric(rng, max_size);
  std::size_t blocks = base.carrier().size();
  std::size_t n = blocks + rng.below(3);
  Carrier c = atoms(n, "p");
  std::vector<std::size_t> block(n);
  for (std::size_t i = 0; i < n; ++i)
    block[i] = i < blocks ? i : rng.below(blocks);
  Carrier sq = Carrier::product(c, c);
  Predicate table = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [a, b] = sq.unpair(i);
    return base.dist(block[a], block[b]);
  });
  return FinPseudoMetric(c, std::move(table));
}

/// A random partition of {0..n-1} into nonempty blocks, as block ids.
inline std::vector<std::size_t> partition(Rng& rng, std::size_t n) {
  std::vector<std::size_t> block(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i)
    block[i] = (next == 0 || rng.coin()) ? next++ : rng.below(next);
  return block;
}

/// A random equivalence relation: zero inside blocks, arbitrary positive
/// values elsewhere (the sequents only constrain the zero pattern).
inline EquivRel equiv_rel(Rng& rng, std::size_t max_size, std::size_t min_size = 1) {
  std::size_t n = min_size + rng.below(max_size - min_size + 1);
  Carrier c = atoms(n, "e");
  std::vector<std::size_t> block = partition(rng, n);
  Carrier sq = Carrier::product(c, c);
  Predicate rel = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [a, b] = sq.unpair(i);
    return block[a] == block[b] ? Value::zero() : positive_value(rng);
  });
  return EquivRel(c, std::move(rel));
}

/// A random partial equivalence relation: some elements are dead
/// (self-distance positive); live elements fall into blocks. At least one
/// element stays live.
inline Per per(Rng& rng, std::size_t max_size, std::size_t min_size = 1) {
  std::size_t n = min_size + rng.below(max_size - min_size + 1);
  Carrier c = atoms(n, "e");
  std::vector<bool> live(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    live[i] = rng.below(4) != 0;
    any = any || live[i];
  }
  if (!any) live[rng.below(n)] = true;
  std::vector<std::size_t> block = partition(rng, n);
  Carrier sq = Carrier::product(c, c);
  Predicate rel = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [a, b] = sq.unpair(i);
    return (live[a] && live[b] && block[a] == block[b]) ? Value::zero()
                                                        : positive_value(rng);
  });
  return Per(c, std::move(rel));
}

/// A random strict predicate on a Per: its zero set is a union of live
/// blocks.
inline StrictPredicate strict_pred(Rng& rng, const Per& p) {
  std::size_t n = p.carrier().size();
  std::vector<bool> zero(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (p.rel_at(i, i).is_zero() && rng.coin())
      for (std::size_t j = 0; j < n; ++j)
        if (p.rel_at(i, j).is_zero()) zero[j] = true;
  Predicate pred = Predicate::tabulate(p.carrier(), [&](std::size_t i) {
    return zero[i] ? Value::zero() : positive_value(rng);
  });
  return StrictPredicate(p, std::move(pred));
}

/// A random morphism of Pers: a block-constant map strictified into a
/// relation. The target must have a live element.
inline FunctionalRelation morphism(Rng& rng, const Per& src, const Per& tgt) {
  std::size_t n = src.carrier().size(), m = tgt.carrier().size();
  std::vector<std::size_t> live_tgt;
  for (std::size_t j = 0; j < m; ++j)
    if (tgt.rel_at(j, j).is_zero()) live_tgt.push_back(j);
  if (live_tgt.empty()) throw Error("morphism: target has no live element");

  // Map each source block to one live target element.
  std::vector<std::size_t> image(n);
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::size_t y = live_tgt[rng.below(live_tgt.size())];
    for (std::size_t j = 0; j < n; ++j)
      if (src.rel_at(i, j).is_zero() || j == i) {
        if (!assigned[j]) { image[j] = y; assigned[j] = true; }
      }
  }
  Carrier xy = Carrier::product(src.carrier(), tgt.carrier());
  Predicate rel = Predicate::tabulate(xy, [&](std::size_t i) {
    auto [x, y] = xy.unpair(i);
    return max(src.rel_at(x, x), tgt.rel_at(image[x], y));
  });
  return FunctionalRelation(src, tgt, std::move(rel));
}

} // namespace culogic::gen

namespace culogic::laws {

/// Deliberate defects injected into one implementation path so that the
/// corresponding suite demonstrably catches them.
enum class Mutation {
  None,
  ExistsAsSup,            // adjunction suite: left adjoint computed as sup
  FrobeniusMeetAsJoin,    // frobenius suite: meet replaced by join
  BeckChevalleyExistsAsForall,  // one composite uses the wrong quantifier
  FunctorialityConstantIdentity,  // identity arrow collapsed to a constant
  EqualityFlipped,        // equality predicate 0/1-flipped
  ComposeAsSup,           // per composition takes sup over the middle
  GMorphismComplement,    // functor relation built from 1 - d(f(x),y)
  MetricThresholdHalf,    // reconstruction zeroes distances up to 1/2
};

inline Mutation mutation_from_name(const std::string& name) {
  if (name.empty() || name == "none") return Mutation::None;
  if (name == "exists-as-sup") return Mutation::ExistsAsSup;
  if (name == "frobenius-meet-as-join") return Mutation::FrobeniusMeetAsJoin;
  if (name == "beck-chevalley-forall") return Mutation::BeckChevalleyExistsAsForall;
  if (name == "functoriality-constant-id") return Mutation::FunctorialityConstantIdentity;
  if (name == "equality-flipped") return Mutation::EqualityFlipped;
  if (name == "compose-as-sup") return Mutation::ComposeAsSup;
  if (name == "g-complement") return Mutation::GMorphismComplement;
  if (name == "metric-threshold-half") return Mutation::MetricThresholdHalf;
  throw Error("unknown mutation '" + name + "'");
}

struct SuiteResult {
  std::string law;
  std::size_t instances = 0;
  std::size_t failure_count = 0;
  std::vector<json> failures;  // first few counterexamples, fully serialized

  bool passed() const { return failure_count == 0; }
  json to_json() const {
    return json{{"law", law},
                {"instances", instances},
                {"failure_count", failure_count},
                {"failures", failures}};
  }
};

namespace detail {

inline void record(SuiteResult& r, json counterexample) {
  ++r.failure_count;
  if (r.failures.size() < 5) r.failures.push_back(std::move(counterexample));
}

inline Predicate exists_mutated(const MapArrow& f, const Predicate& a) {
  std::vector<Value> out(f.codomain().size(), Value::zero());
  for (std::size_t y = 0; y < f.domain().size(); ++y)
    out[f.apply(y)] = max(out[f.apply(y)], a.at(y));
  return Predicate(f.codomain(), std::move(out));
}

} // namespace detail

inline SuiteResult adjunction_suite(std::uint64_t seed, std::size_t trials,
                                    Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "adjunction"};
  Rng rng(seed ^ 0xad30);
  for (std::size_t t = 0; t < trials; ++t) {
    Carrier y = gen::carrier(rng, 4, 1);
    Carrier x = gen::carrier(rng, 4, 1);
    MapArrow f = gen::map(rng, y, x);
    Predicate a = gen::predicate(rng, y);
    Predicate b = gen::predicate(rng, x);
    ++r.instances;
    Predicate ex = mutation == Mutation::ExistsAsSup ? detail::exists_mutated(f, a)
                                                     : exists_along(f, a);
    bool left = leq(ex, b).holds == leq(a, pullback(f, b)).holds;
    bool right = leq(pullback(f, b), a).holds == leq(b, forall_along(f, a)).holds;
    if (!left || !right)
      detail::record(r, json{{"map", to_json(f)},
                             {"alpha", to_json(a)},
                             {"beta", to_json(b)},
                             {"left_biconditional", left},
                             {"right_biconditional", right}});
  }
  return r;
}

inline SuiteResult frobenius_suite(std::uint64_t seed, std::size_t trials,
                                   Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "frobenius"};
  Rng rng(seed ^ 0xf0b0);
  for (std::size_t t = 0; t < trials; ++t) {
    Carrier x = gen::carrier(rng, 4, 1);
    Carrier y = gen::carrier(rng, 4, 1);
    MapArrow pi = MapArrow::proj_left(x, y);
    Predicate alpha = gen::predicate(rng, x);
    Predicate beta = gen::predicate(rng, Carrier::product(x, y));
    ++r.instances;
    Predicate inner = mutation == Mutation::FrobeniusMeetAsJoin
                          ? join(pullback(pi, alpha), beta)
                          : meet(pullback(pi, alpha), beta);
    Predicate lhs = exists_along(pi, inner);
    Predicate rhs = meet(alpha, exists_along(pi, beta));
    if (!predicates_iso(lhs, rhs))
      detail::record(r, json{{"alpha", to_json(alpha)},
                             {"beta", to_json(beta)},
                             {"lhs", to_json(lhs)},
                             {"rhs", to_json(rhs)}});
  }
  return r;
}

inline SuiteResult beck_chevalley_suite(std::uint64_t seed, std::size_t trials,
                                        Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "beck-chevalley"};
  Rng rng(seed ^ 0xbc00);
  for (std::size_t t = 0; t < trials; ++t) {
    Carrier a = gen::carrier(rng, 3, 1);
    Carrier b = gen::carrier(rng, 3, 1);
    Carrier c = gen::carrier(rng, 3, 1);
    MapArrow k = gen::map(rng, b, a);
    MapArrow h = gen::map(rng, c, a);
    PullbackSquare sq = PullbackSquare::canonical(k, h);
    Predicate beta = gen::predicate(rng, b);
    ++r.instances;
    Predicate left = mutation == Mutation::BeckChevalleyExistsAsForall
                         ? forall_along(sq.g(), pullback(sq.f(), beta))
                         : exists_along(sq.g(), pullback(sq.f(), beta));
    bool ex = predicates_iso(left, pullback(sq.h(), exists_along(sq.k(), beta)));
    bool fa = predicates_iso(forall_along(sq.g(), pullback(sq.f(), beta)),
                             pullback(sq.h(), forall_along(sq.k(), beta)));
    if (!ex || !fa)
      detail::record(r, json{{"k", to_json(k)},
                             {"h", to_json(h)},
                             {"beta", to_json(beta)},
                             {"exists_side", ex},
                             {"forall_side", fa}});
  }
  return r;
}

inline SuiteResult functoriality_suite(std::uint64_t seed, std::size_t trials,
                                       Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "functoriality"};
  Rng rng(seed ^ 0xfc70);
  for (std::size_t t = 0; t < trials; ++t) {
    Carrier x = gen::carrier(rng, 4, 1);
    Carrier y = gen::carrier(rng, 4, 1);
    Carrier z = gen::carrier(rng, 4, 1);
    MapArrow f = gen::map(rng, x, y);
    MapArrow g = gen::map(rng, y, z);
    Predicate alpha = gen::predicate(rng, z);
    Predicate beta = gen::predicate(rng, x);
    ++r.instances;
    MapArrow id = mutation == Mutation::FunctorialityConstantIdentity
                      ? MapArrow::constant(x, x, 0)
                      : MapArrow::identity(x);
    bool unit_law = pullback(id, beta) == beta;
    bool comp_law = pullback(compose(g, f), alpha) == pullback(f, pullback(g, alpha));
    if (!unit_law || !comp_law)
      detail::record(r, json{{"f", to_json(f)},
                             {"g", to_json(g)},
                             {"alpha", to_json(alpha)},
                             {"unit_law", unit_law},
                             {"composition_law", comp_law}});
  }
  return r;
}

inline SuiteResult equality_suite(std::uint64_t seed, std::size_t trials,
                                  Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "equality"};
  Rng rng(seed ^ 0xe100);
  for (std::size_t t = 0; t < trials; ++t) {
    Carrier x = gen::carrier(rng, 4, 1);
    Carrier sq = Carrier::product(x, x);
    Predicate a = gen::predicate(rng, sq);
    ++r.instances;
    Predicate eq = eq_predicate(x);
    if (mutation == Mutation::EqualityFlipped)
      eq = Predicate::tabulate(sq, [&](std::size_t i) {
        return eq.at(i).is_zero() ? Value::one() : Value::zero();
      });
    bool clause1 = leq(top(x), pullback(MapArrow::diagonal(x), a)).holds ==
                   leq(eq, a).holds;
    bool clause2 = true;
    if (t % 4 == 0) {
      Carrier b = gen::carrier(rng, 2, 1);
      clause2 = check_eq_clause_two(gen::carrier(rng, 2, 1), b);
    }
    if (!clause1 || !clause2)
      detail::record(r, json{{"carrier_size", x.size()},
                             {"a", to_json(a)},
                             {"clause1", clause1},
                             {"clause2", clause2}});
  }
  return r;
}

inline SuiteResult per_category_suite(std::uint64_t seed, std::size_t trials,
                                      Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "per-category"};
  Rng rng(seed ^ 0x9e50);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.instances;
    try {
      Per p = gen::per(rng, 3);
      Per q = gen::per(rng, 3);
      Per s = gen::per(rng, 3);
      Per u = gen::per(rng, 3);
      FunctionalRelation f = gen::morphism(rng, p, q);
      FunctionalRelation g = gen::morphism(rng, q, s);
      FunctionalRelation h = gen::morphism(rng, s, u);

      auto compose2 = [&](const FunctionalRelation& a,
                          const FunctionalRelation& b) -> FunctionalRelation {
        if (mutation != Mutation::ComposeAsSup) return a.then(b);
        Carrier xz = Carrier::product(a.source().carrier(), b.target().carrier());
        std::size_t ys = a.target().carrier().size();
        Predicate rel = Predicate::tabulate(xz, [&](std::size_t i) {
          auto [xx, zz] = xz.unpair(i);
          Value acc = Value::zero();
          for (std::size_t y = 0; y < ys; ++y)
            acc = max(acc, max(a.rel_at(xx, y), b.rel_at(y, zz)));
          return acc;
        });
        return FunctionalRelation(a.source(), b.target(), std::move(rel));
      };

      FunctionalRelation left = compose2(compose2(f, g), h);
      FunctionalRelation right = compose2(f, compose2(g, h));
      bool assoc = morphism_eq(left, right) && morphism_eq(right, left);
      bool unit = morphism_eq(compose2(identity_morphism(p), f), f) &&
                  morphism_eq(compose2(f, identity_morphism(q)), f);
      // Closure: the constructor inside compose2 has already re-checked the
      // four sequents for every composite.
      if (!assoc || !unit)
        detail::record(r, json{{"f", functional_to_json(f)},
                               {"g", functional_to_json(g)},
                               {"associative", assoc},
                               {"unital", unit}});
    } catch (const Error& e) {
      detail::record(r, json{{"exception", e.what()}});
    }
  }
  return r;
}

/// Whether one subobject factors through another, by exhaustive search
/// over {0,1}-valued candidate relations (zero patterns decide), viable on
/// small carriers.
inline bool subobject_factors(const Per& sub_a, const FunctionalRelation& inc_a,
                              const Per& sub_b, const FunctionalRelation& inc_b) {
  std::size_t n = sub_a.carrier().size() * sub_b.carrier().size();
  if (n > 16) throw Error("subobject_factors: carrier too large for search");
  Carrier xy = Carrier::product(sub_a.carrier(), sub_b.carrier());
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    Predicate rel = Predicate::tabulate(xy, [&](std::size_t i) {
      return (mask >> i) & 1 ? Value::zero() : Value::one();
    });
    if (!check_functional_axioms(sub_a, sub_b, rel).all()) continue;
    FunctionalRelation h(sub_a, sub_b, rel);
    if (morphism_eq(h.then(inc_b), inc_a) && morphism_eq(inc_a, h.then(inc_b)))
      return true;
  }
  return false;
}

inline SuiteResult subobject_suite(std::uint64_t seed, std::size_t trials,
                                   Mutation mutation = Mutation::None) {
  (void)mutation;
  SuiteResult r{.law = "subobject-correspondence"};
  Rng rng(seed ^ 0x5bb0);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.instances;
    try {
      Per p = gen::per(rng, 3);
      StrictPredicate phi = gen::strict_pred(rng, p);
      auto [sub, inc] = sub_from_strict(phi);
      bool mono = is_mono(inc);
      StrictPredicate back = strict_from_mono(inc);
      bool round = strict_iso(back, phi);

      // Monotonicity both ways on a second strict predicate.
      StrictPredicate psi = gen::strict_pred(rng, p);
      auto [sub2, inc2] = sub_from_strict(psi);
      bool order_ok = strict_leq(phi, psi) ==
                      subobject_factors(sub, inc, sub2, inc2);
      if (!mono || !round || !order_ok)
        detail::record(r, json{{"phi", strict_to_json(phi)},
                               {"mono", mono},
                               {"round_trip", round},
                               {"order_preserved", order_ok}});
    } catch (const Error& e) {
      detail::record(r, json{{"exception", e.what()}});
    }
  }
  return r;
}

inline SuiteResult functor_g_suite(std::uint64_t seed, std::size_t trials,
                                   Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "functor-g"};
  Rng rng(seed ^ 0x6600);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.instances;
    try {
      FinMetric m = gen::metric(rng, 4);
      FinMetric n = gen::metric(rng, 4);
      FinMetric p = gen::metric(rng, 4);
      MapArrow f = gen::map(rng, m.carrier(), n.carrier());
      MapArrow g = gen::map(rng, n.carrier(), p.carrier());

      auto gm = [&](const MapArrow& map, const FinPseudoMetric& src,
                    const FinPseudoMetric& tgt) -> FunctionalRelation {
        if (mutation != Mutation::GMorphismComplement) return g_morphism(map, src, tgt);
        Carrier xy = Carrier::product(src.carrier(), tgt.carrier());
        Predicate rel = Predicate::tabulate(xy, [&](std::size_t i) {
          auto [x, y] = xy.unpair(i);
          return complement(tgt.dist(map.apply(x), y));
        });
        return FunctionalRelation(g_object(src), g_object(tgt), std::move(rel));
      };

      bool id_law = morphism_eq(gm(MapArrow::identity(m.carrier()), m, m),
                                identity_morphism(g_object(m)));
      FunctionalRelation gf = gm(f, m, n).then(gm(g, n, p));
      bool comp_law = morphism_eq(gm(compose(g, f), m, p), gf) &&
                      morphism_eq(gf, gm(compose(g, f), m, p));

      // Product preservation: the object and both projections.
      FinPseudoMetric mn = metric_product(m, n);
      Per prod_per = per_product(g_object(m), g_object(n));
      bool prod_obj = g_object(mn) == prod_per;
      MapArrow pi_m = MapArrow::proj_left(m.carrier(), n.carrier());
      bool prod_proj =
          morphism_eq(per_proj_left(g_object(m), g_object(n)), gm(pi_m, mn, m)) &&
          morphism_eq(gm(pi_m, mn, m), per_proj_left(g_object(m), g_object(n)));

      // Faithfulness and fullness round trips.
      bool faithful = extract_function(gm(f, m, n)) == f;
      FunctionalRelation fuzzed(
          g_object(m), g_object(n),
          Predicate::tabulate(Carrier::product(m.carrier(), n.carrier()),
                              [&](std::size_t i) {
                                Value v = gm(f, m, n).rel().at(i);
                                return v.is_zero() ? v : gen::positive_value(rng);
                              }));
      MapArrow recovered = extract_function(fuzzed);
      bool full = morphism_eq(g_morphism(recovered, m, n), fuzzed) &&
                  morphism_eq(fuzzed, g_morphism(recovered, m, n));

      if (!id_law || !comp_law || !prod_obj || !prod_proj || !faithful || !full)
        detail::record(r, json{{"f", to_json(f)},
                               {"identity", id_law},
                               {"composition", comp_law},
                               {"product_object", prod_obj},
                               {"product_projection", prod_proj},
                               {"faithful", faithful},
                               {"full", full}});
    } catch (const Error& e) {
      detail::record(r, json{{"exception", e.what()}});
    }
  }
  return r;
}

inline SuiteResult equivalence_suite(std::uint64_t seed, std::size_t trials,
                                     Mutation mutation = Mutation::None) {
  SuiteResult r{.law = "metric-equivalence"};
  Rng rng(seed ^ 0xec00);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.instances;
    try {
      EquivRel e = gen::equiv_rel(rng, 5);
      MetricFromPer rec = [&] {
        if (mutation != Mutation::MetricThresholdHalf) return metric_from_per(e);
        Carrier sq = Carrier::product(e.carrier(), e.carrier());
        Predicate d = Predicate::tabulate(sq, [&](std::size_t i) {
          return e.rel().at(i) <= Value(1, 2) ? Value::zero() : Value::one();
        });
        FinPseudoMetric m(e.carrier(), d);
        EquivRel ge = g_object(m);
        return MetricFromPer{m, FunctionalRelation(ge, e, d),
                             FunctionalRelation(e, ge, d)};
      }();
      bool iso = is_isomorphism_pair(rec.iso, rec.inverse);
      bool uniform = check_uniformity_axioms(e);
      if (!iso || !uniform)
        detail::record(r, json{{"relation", per_to_json(e)},
                               {"isomorphism", iso},
                               {"uniformity", uniform}});
    } catch (const Error& ex) {
      detail::record(r, json{{"exception", ex.what()}});
    }
  }
  return r;
}

/// Random continuous-logic models over genuine finite metrics: validity of
/// random coherent sequents must agree between the plain interpretation
/// and the transferred strict interpretation.
inline SuiteResult transfer_suite(std::uint64_t seed, std::size_t models,
                                  std::size_t sequents_per_model,
                                  Mutation mutation = Mutation::None) {
  (void)mutation;
  SuiteResult r{.law = "validity-transfer"};
  Rng rng(seed ^ 0x77aa);
  for (std::size_t t = 0; t < models; ++t) {
    Signature sig = gen::signature(rng);
    Interpretation<UBackend> I = gen::model(rng, sig, 2);
    CmtInterpretation C;
    C.signature = sig;
    C.functions = I.functions;
    C.relations = I.relations;
    for (const auto& [s, c] : I.sorts) {
      // A random genuine metric on exactly this carrier.
      Carrier sq = Carrier::product(c, c);
      static const Rat pool[] = {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1, 1)};
      std::size_t n = c.size();
      std::vector<Rat> d(n * n, Rat(0, 1));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Rat v = pool[rng.below(4)];
          d[i * n + j] = v;
          d[j * n + i] = v;
        }
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            d[i * n + j] = min(d[i * n + j], d[i * n + k] + d[k * n + j]);
      Predicate table = Predicate::tabulate(sq, [&](std::size_t i) {
        auto [a, b] = sq.unpair(i);
        return Value(min(d[a * n + b], Rat(1, 1)));
      });
      C.sorts.emplace(s, FinPseudoMetric(c, std::move(table)));
    }

    Interpretation<UBackend> plain = forget_metrics(C);
    Interpretation<StrictBackend> strict = transfer_to_strict(C);
    for (std::size_t k = 0; k < sequents_per_model; ++k) {
      SequentAst s = gen::sequent(rng, sig, 3, /*allow_conn=*/false);
      ++r.instances;
      bool before = check_sequent(plain, s).valid;
      bool after = check_sequent(strict, s).valid;
      if (before != after)
        detail::record(r, json{{"model", model_to_json(plain)},
                               {"valid_plain", before},
                               {"valid_strict", after}});
    }
  }
  return r;
}

/// The full battery with one seed, as run by the command line driver.
inline std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t trials,
                                        Mutation mutation = Mutation::None) {
  std::vector<SuiteResult> out;
  out.push_back(adjunction_suite(seed, trials, mutation));
  out.push_back(frobenius_suite(seed, trials, mutation));
  out.push_back(beck_chevalley_suite(seed, trials, mutation));
  out.push_back(functoriality_suite(seed, trials, mutation));
  out.push_back(equality_suite(seed, trials, mutation));
  out.push_back(per_category_suite(seed, trials / 2 + 1, mutation));
  out.push_back(subobject_suite(seed, trials / 4 + 1, mutation));
  out.push_back(functor_g_suite(seed, trials / 2 + 1, mutation));
  out.push_back(equivalence_suite(seed, trials / 2 + 1, mutation));
  out.push_back(transfer_suite(seed, trials / 20 + 1, 10, mutation));
  return out;
}

} // namespace culogic::laws
