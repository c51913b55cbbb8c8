#pragma once

#include <optional>
#include <vector>

#include "culogic/predicate.hpp"

namespace culogic {

// Fiberwise lattice structure. Truth is 0, so meet is the pointwise
// maximum and join the pointwise minimum.

inline Predicate top(const Carrier& x) { return Predicate::constant(x, Value::zero()); }
inline Predicate bottom(const Carrier& x) { return Predicate::constant(x, Value::one()); }

inline Predicate meet(const Predicate& a, const Predicate& b) {
  require_same_carrier(a.carrier(), b.carrier(), "meet");
  return Predicate::tabulate(a.carrier(),
                             [&](std::size_t i) { return max(a.at(i), b.at(i)); });
}

inline Predicate join(const Predicate& a, const Predicate& b) {
  require_same_carrier(a.carrier(), b.carrier(), "join");
  return Predicate::tabulate(a.carrier(),
                             [&](std::size_t i) { return min(a.at(i), b.at(i)); });
}

/// Pullback (substitution): (f* alpha)(x) = alpha(f(x)).
inline Predicate pullback(const MapArrow& f, const Predicate& alpha) {
  require_same_carrier(alpha.carrier(), f.codomain(), "pullback");
  return Predicate::tabulate(f.domain(),
                             [&](std::size_t i) { return alpha.at(f.apply(i)); });
}

/// Left adjoint to pullback: fiberwise infimum. The infimum of the empty
/// fiber is 1.
inline Predicate exists_along(const MapArrow& f, const Predicate& alpha) {
  require_same_carrier(alpha.carrier(), f.domain(), "exists_along");
  std::vector<Value> out(f.codomain().size(), Value::one());
  for (std::size_t y = 0; y < f.domain().size(); ++y)
    out[f.apply(y)] = min(out[f.apply(y)], alpha.at(y));
  return Predicate(f.codomain(), std::move(out));
}

/// Right adjoint to pullback: fiberwise supremum. The supremum of the
/// empty fiber is 0 (forced by the adjunction f* -| forall_f).
inline Predicate forall_along(const MapArrow& f, const Predicate& alpha) {
  require_same_carrier(alpha.carrier(), f.domain(), "forall_along");
  std::vector<Value> out(f.codomain().size(), Value::zero());
  for (std::size_t y = 0; y < f.domain().size(); ++y)
    out[f.apply(y)] = max(out[f.apply(y)], alpha.at(y));
  return Predicate(f.codomain(), std::move(out));
}

/// The equality predicate on X x X: 0 on the diagonal, 1 off it.
inline Predicate eq_predicate(const Carrier& x) {
  Carrier sq = Carrier::product(x, x);
  return Predicate::tabulate(sq, [&](std::size_t i) {
    auto [l, r] = sq.unpair(i);
    return l == r ? Value::zero() : Value::one();
  });
}

/// Both adjunction biconditionals for one instance: exists_f -| f* and
/// f* -| forall_f. alpha lives over the domain of f, beta over the codomain.
inline bool check_adjunctions(const MapArrow& f, const Predicate& alpha,
                              const Predicate& beta) {
  bool left = leq(exists_along(f, alpha), beta).holds ==
              leq(alpha, pullback(f, beta)).holds;
  bool right = leq(pullback(f, beta), alpha).holds ==
               leq(beta, forall_along(f, alpha)).holds;
  return left && right;
}

/// Frobenius: exists_f(f* alpha /\ beta) ~ alpha /\ exists_f beta,
/// checked in both directions. alpha lives over the codomain.
inline bool check_frobenius(const MapArrow& f, const Predicate& alpha,
                            const Predicate& beta) {
  Predicate lhs = exists_along(f, meet(pullback(f, alpha), beta));
  Predicate rhs = meet(alpha, exists_along(f, beta));
  return predicates_iso(lhs, rhs);
}

/// A commuting square
///
///        f
///     D ---> B
///   g |      | k
///     v      v
///     C ---> A
///        h
///
/// that is a pullback: the canonical map D -> B x_A C is a bijection.
class PullbackSquare {
public:
  PullbackSquare(MapArrow f, MapArrow g, MapArrow k, MapArrow h)
      : f_(std::move(f)), g_(std::move(g)), k_(std::move(k)), h_(std::move(h)) {
    require_same_carrier(f_.domain(), g_.domain(), "pullback square apex");
    require_same_carrier(k_.domain(), f_.codomain(), "pullback square");
    require_same_carrier(h_.domain(), g_.codomain(), "pullback square");
    require_same_carrier(k_.codomain(), h_.codomain(), "pullback square base");
    for (std::size_t d = 0; d < f_.domain().size(); ++d)
      if (k_.apply(f_.apply(d)) != h_.apply(g_.apply(d)))
        throw Error("square does not commute");
    // Universal property over finite carriers: d |-> (f(d), g(d)) must hit
    // every matching pair exactly once.
    std::vector<int> hits(f_.codomain().size() * h_.domain().size(), 0);
    for (std::size_t d = 0; d < f_.domain().size(); ++d)
      hits[f_.apply(d) * h_.domain().size() + g_.apply(d)] += 1;
    for (std::size_t b = 0; b < f_.codomain().size(); ++b)
      for (std::size_t c = 0; c < h_.domain().size(); ++c) {
        int expected = k_.apply(b) == h_.apply(c) ? 1 : 0;
        if (hits[b * h_.domain().size() + c] != expected)
          throw Error("square is not a pullback");
      }
  }

  const MapArrow& f() const { return f_; }
  const MapArrow& g() const { return g_; }
  const MapArrow& k() const { return k_; }
  const MapArrow& h() const { return h_; }

  /// The canonical pullback square of k along h, with apex
  /// {(b,c) : k(b) = h(c)} carved out of B x C.
  static PullbackSquare canonical(const MapArrow& k, const MapArrow& h) {
    require_same_carrier(k.codomain(), h.codomain(), "canonical pullback base");
    std::vector<std::string> names;
    std::vector<std::size_t> to_b, to_c;
    for (std::size_t b = 0; b < k.domain().size(); ++b)
      for (std::size_t c = 0; c < h.domain().size(); ++c)
        if (k.apply(b) == h.apply(c)) {
          names.push_back("(" + k.domain().element_name(b) + "," +
                          h.domain().element_name(c) + ")");
          to_b.push_back(b);
          to_c.push_back(c);
        }
    Carrier apex = Carrier::atoms(std::move(names));
    return PullbackSquare(MapArrow(apex, k.domain(), std::move(to_b)),
                          MapArrow(apex, h.domain(), std::move(to_c)), k, h);
  }

private:
  MapArrow f_, g_, k_, h_;
};

/// Beck-Chevalley for one instance, for both quantifiers:
/// exists_g(f* beta) ~ h*(exists_k beta) and the same with forall.
/// beta lives over the codomain of f (corner B).
inline bool check_beck_chevalley(const PullbackSquare& sq, const Predicate& beta) {
  require_same_carrier(beta.carrier(), sq.f().codomain(), "beck-chevalley");
  bool ex = predicates_iso(exists_along(sq.g(), pullback(sq.f(), beta)),
                           pullback(sq.h(), exists_along(sq.k(), beta)));
  bool fa = predicates_iso(forall_along(sq.g(), pullback(sq.f(), beta)),
                           pullback(sq.h(), forall_along(sq.k(), beta)));
  return ex && fa;
}

/// First equality clause for one instance: top <= delta*(A) iff Eq <= A.
inline bool check_eq_clause_one(const Carrier& x, const Predicate& a) {
  require_same_carrier(a.carrier(), Carrier::product(x, x), "equality clause");
  bool lhs = leq(top(x), pullback(MapArrow::diagonal(x), a)).holds;
  bool rhs = leq(eq_predicate(x), a).holds;
  return lhs == rhs;
}

/// Second equality clause: Eq_{AxB} ~ pi13* Eq_A /\ pi24* Eq_B.
inline bool check_eq_clause_two(const Carrier& a, const Carrier& b) {
  Carrier ab = Carrier::product(a, b);
  Carrier sq = Carrier::product(ab, ab);
  // pi13 : (AxB)x(AxB) -> AxA, pi24 : (AxB)x(AxB) -> BxB
  MapArrow first = MapArrow::proj_left(ab, ab);
  MapArrow second = MapArrow::proj_right(ab, ab);
  MapArrow pa = MapArrow::proj_left(a, b);
  MapArrow pb = MapArrow::proj_right(a, b);
  MapArrow pi13 = MapArrow::pair(compose(pa, first), compose(pa, second));
  MapArrow pi24 = MapArrow::pair(compose(pb, first), compose(pb, second));
  Predicate rhs = meet(pullback(pi13, eq_predicate(a)),
                       pullback(pi24, eq_predicate(b)));
  return predicates_iso(eq_predicate(ab), rhs);
}

} // namespace culogic
