#pragma once

#include "culogic/per.hpp"

namespace culogic {

/// Interpreter backend over Strict(U): objects are Pers, morphisms are
/// functional relations, predicates are strict relations. Quantifiers and
/// substitution are computed by the existential formulas of the strict
/// hyperdoctrine, not by the underlying set-level shortcuts, so agreement
/// with the U interpretation is a real theorem being exercised.
struct StrictBackend {
  using Object = Per;
  using Morphism = FunctionalRelation;
  using Pred = StrictPredicate;

  static Object unit_object() { return unit_per(); }
  static Object product(const Object& a, const Object& b) { return per_product(a, b); }
  static bool objects_equal(const Object& a, const Object& b) { return a == b; }
  static const Carrier& carrier_of(const Object& o) { return o.carrier(); }

  static Morphism identity(const Object& o) { return identity_morphism(o); }
  static Morphism terminal_arrow(const Object& o) { return per_terminal(o); }
  static Morphism proj_left(const Object& a, const Object& b) {
    return per_proj_left(a, b);
  }
  static Morphism proj_right(const Object& a, const Object& b) {
    return per_proj_right(a, b);
  }
  static Morphism pair(const Morphism& f, const Morphism& g) { return per_pair(f, g); }
  static Morphism compose_m(const Morphism& g, const Morphism& f) { return f.then(g); }
  static Object m_domain(const Morphism& m) { return m.source(); }
  static Object m_codomain(const Morphism& m) { return m.target(); }

  static Pred top_p(const Object& o) { return strict_top(o); }
  static Pred bottom_p(const Object& o) { return strict_bottom(o); }
  static Pred meet_p(const Pred& a, const Pred& b) { return strict_meet(a, b); }
  static Pred join_p(const Pred& a, const Pred& b) { return strict_join(a, b); }
  static Pred pullback_p(const Morphism& f, const Pred& p) {
    return strict_pullback(f, p);
  }
  /// The equality predicate on (X,~) x (X,~) is ~ itself.
  static Pred eq_p(const Object& o) {
    Per prod = per_product(o, o);
    return StrictPredicate(prod, detail::with_carrier(o.rel(), prod.carrier()));
  }
  static Pred exists_proj(const Object& a, const Object& b, const Pred& p) {
    return strict_exists(per_proj_left(a, b), p);
  }
  static Pred forall_proj(const Object& a, const Object& b, const Pred& p) {
    return strict_forall_proj(a, b, p);
  }
  /// Connective application acts pointwise on underlying predicates. The
  /// result need not be strict (that is the point of the classifier), so
  /// no strictness check is made here.
  static Pred apply_conn(const ConnectiveExpr& u, const std::vector<Pred>& args,
                         const Object& ctx) {
    if (args.empty())
      return StrictPredicate::unchecked(ctx,
                                        Predicate::constant(ctx.carrier(), u.eval({})));
    std::vector<Predicate> raw;
    raw.reserve(args.size());
    for (const auto& a : args) raw.push_back(a.pred());
    return StrictPredicate::unchecked(args.front().object(),
                                      apply_connective(u, raw));
  }
  static LeqVerdict leq_p(const Pred& a, const Pred& b) {
    return leq(a.pred(), b.pred());
  }
  static const Predicate& underlying(const Pred& p) { return p.pred(); }
};

} // namespace culogic
