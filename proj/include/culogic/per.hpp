#pragma once

#include <utility>

#include "culogic/interpreter.hpp"
#include "culogic/parser.hpp"

namespace culogic {

namespace detail {

/// Re-keys a predicate onto an enumeration-compatible carrier (same size,
/// same row-major element order). Used to move tables between a product
/// carrier X x X and the interpreter's fold-product of the same sorts.
inline Predicate with_carrier(const Predicate& p, const Carrier& c) {
  if (p.size() != c.size()) throw Error("carrier size mismatch in re-keying");
  return Predicate(c, p.values());
}

/// The interpreter-side interpretation of a binary relation world: sorts
/// X (and optionally Y), with relation tables supplied by the caller.
struct RelWorld {
  Interpretation<UBackend> I;

  RelWorld& sort(const std::string& name, const Carrier& c) {
    I.signature.add_sort(name);
    I.sorts.emplace(name, c);
    return *this;
  }
  RelWorld& relation(const std::string& name, std::vector<std::string> args,
                     const Predicate& table) {
    Carrier dom = Carrier::unit();
    for (const auto& a : args) dom = Carrier::product(dom, I.sorts.at(a));
    I.signature.add_relation(name, args);
    I.relations.emplace(name, with_carrier(table, dom));
    return *this;
  }
  bool holds(const std::string& sequent_text) const {
    return check_sequent(I, parse_sequent(I.signature, sequent_text)).valid;
  }
};

} // namespace detail

struct PerChecks {
  bool symmetric = false;
  bool transitive = false;
  bool reflexive = false;
  bool per() const { return symmetric && transitive; }
  bool equivalence() const { return per() && reflexive; }
};

class Per;

namespace detail {

// Constructors validate through these direct zero-set scans. They decide
// the same sequents as the logic-dsl checkers below (a sequent holds iff
// the zero set of the left side is contained in that of the right), but
// without building interpreter state; the test suite pins the two routes
// against each other.

inline bool fast_per_check(const Carrier& x, const Predicate& rel) {
  std::size_t n = x.size();
  auto z = [&](std::size_t i, std::size_t j) {
    return rel.at(rel.carrier().pair_index(i, j)).is_zero();
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (z(i, j) && !z(j, i)) return false;
      if (z(i, j))
        for (std::size_t k = 0; k < n; ++k)
          if (z(j, k) && !z(i, k)) return false;
    }
  return true;
}

inline bool fast_strict_check(const Per& object, const Predicate& pred);
inline bool fast_functional_check(const Per& src, const Per& tgt,
                                  const Predicate& rel);

} // namespace detail

/// The defining sequents of a (partial) equivalence relation, decided by
/// the sequent checker itself.
inline PerChecks check_per_axioms(const Carrier& x, const Predicate& rel) {
  require_same_carrier(rel.carrier(), Carrier::product(x, x), "per relation");
  detail::RelWorld w;
  w.sort("X", x).relation("sim", {"X", "X"}, rel);
  PerChecks c;
  c.symmetric = w.holds("[x:X, y:X] sim(x,y) |- sim(y,x)");
  c.transitive = w.holds("[x:X, y:X, z:X] sim(x,y) /\\ sim(y,z) |- sim(x,z)");
  c.reflexive = w.holds("[x:X] top |- sim(x,x)");
  return c;
}

inline bool is_per(const Carrier& x, const Predicate& rel) {
  return check_per_axioms(x, rel).per();
}
inline bool is_equiv_rel(const Carrier& x, const Predicate& rel) {
  return check_per_axioms(x, rel).equivalence();
}

/// A partial equivalence relation (X, ~): symmetric and transitive under
/// the sequent semantics. Reflexivity is not required; elements x with
/// x ~ x nonzero are dead.
class Per {
public:
  Per(Carrier carrier, Predicate rel)
      : carrier_(std::move(carrier)), rel_(std::move(rel)) {
    require_same_carrier(rel_.carrier(), Carrier::product(carrier_, carrier_),
                         "per relation");
    if (!detail::fast_per_check(carrier_, rel_))
      throw Error("relation is not a partial equivalence");
  }

  const Carrier& carrier() const { return carrier_; }
  const Predicate& rel() const { return rel_; }

  Value rel_at(std::size_t i, std::size_t j) const {
    return rel_.at(rel_.carrier().pair_index(i, j));
  }

  /// x |-> x ~ x; the top strict predicate.
  Predicate self_rel() const {
    return Predicate::tabulate(carrier_,
                               [&](std::size_t i) { return rel_at(i, i); });
  }

  bool reflexive() const {
    for (std::size_t i = 0; i < carrier_.size(); ++i)
      if (!rel_at(i, i).is_zero()) return false;
    return true;
  }

  friend bool operator==(const Per& a, const Per& b) {
    return a.carrier_ == b.carrier_ && a.rel_ == b.rel_;
  }

protected:
  Carrier carrier_;
  Predicate rel_;
};

/// A Per that is additionally reflexive.
class EquivRel : public Per {
public:
  EquivRel(Carrier carrier, Predicate rel) : Per(std::move(carrier), std::move(rel)) {
    if (!reflexive()) throw Error("relation is not reflexive");
  }
  explicit EquivRel(const Per& p) : Per(p) {
    if (!reflexive()) throw Error("relation is not reflexive");
  }
};

inline Per unit_per() {
  Carrier u = Carrier::unit();
  return Per(u, top(Carrier::product(u, u)));
}

namespace detail {

inline bool fast_strict_check(const Per& object, const Predicate& pred) {
  std::size_t n = object.carrier().size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!pred.at(x).is_zero()) continue;
    if (!object.rel_at(x, x).is_zero()) return false;  // strictness
    for (std::size_t x2 = 0; x2 < n; ++x2)             // relationality
      if (object.rel_at(x, x2).is_zero() && !pred.at(x2).is_zero()) return false;
  }
  return true;
}

inline bool fast_functional_check(const Per& src, const Per& tgt,
                                  const Predicate& rel) {
  std::size_t n = src.carrier().size(), m = tgt.carrier().size();
  auto z = [&](std::size_t x, std::size_t y) {
    return rel.at(rel.carrier().pair_index(x, y)).is_zero();
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (!z(x, y)) continue;
      // strict
      if (!src.rel_at(x, x).is_zero() || !tgt.rel_at(y, y).is_zero()) return false;
      // single-valued
      for (std::size_t y2 = 0; y2 < m; ++y2)
        if (z(x, y2) && !tgt.rel_at(y, y2).is_zero()) return false;
      // relational
      for (std::size_t x2 = 0; x2 < n; ++x2) {
        if (!src.rel_at(x, x2).is_zero()) continue;
        for (std::size_t y2 = 0; y2 < m; ++y2)
          if (tgt.rel_at(y, y2).is_zero() && !z(x2, y2)) return false;
      }
    }
  // total
  for (std::size_t x = 0; x < n; ++x) {
    if (!src.rel_at(x, x).is_zero()) continue;
    bool hit = false;
    for (std::size_t y = 0; y < m && !hit; ++y) hit = z(x, y);
    if (!hit) return false;
  }
  return true;
}

} // namespace detail

// --- strict predicates -------------------------------------------------

struct StrictChecks {
  bool strict = false;
  bool relational = false;
  bool all() const { return strict && relational; }
};

inline StrictChecks check_strict_axioms(const Per& object, const Predicate& pred) {
  require_same_carrier(pred.carrier(), object.carrier(), "strict predicate");
  detail::RelWorld w;
  w.sort("X", object.carrier())
      .relation("sim", {"X", "X"}, object.rel())
      .relation("phi", {"X"}, pred);
  StrictChecks c;
  c.strict = w.holds("[x:X] phi(x) |- sim(x,x)");
  c.relational = w.holds("[x:X, y:X] phi(x) /\\ sim(x,y) |- phi(y)");
  return c;
}

/// A predicate respecting a Per's partial equality: the fiberwise notion
/// of subobject over (X, ~).
class StrictPredicate {
public:
  StrictPredicate(Per object, Predicate pred)
      : object_(std::move(object)), pred_(std::move(pred)) {
    require_same_carrier(pred_.carrier(), object_.carrier(), "strict predicate");
    if (!detail::fast_strict_check(object_, pred_))
      throw Error("predicate is not strict over the Per");
  }

  /// Skips validation; used where strictness is not guaranteed (connective
  /// application) or already established.
  static StrictPredicate unchecked(Per object, Predicate pred) {
    StrictPredicate s(std::move(object), std::move(pred), 0);
    return s;
  }

  const Per& object() const { return object_; }
  const Predicate& pred() const { return pred_; }

private:
  StrictPredicate(Per object, Predicate pred, int)
      : object_(std::move(object)), pred_(std::move(pred)) {}

  Per object_;
  Predicate pred_;
};

// --- functional relations ----------------------------------------------

struct FunctionalChecks {
  bool strict = false;
  bool relational = false;
  bool single_valued = false;
  bool total = false;
  bool all() const { return strict && relational && single_valued && total; }
};

/// The four defining sequents of a functional relation, decided by the
/// sequent checker.
inline FunctionalChecks check_functional_axioms(const Per& source, const Per& target,
                                                const Predicate& rel) {
  require_same_carrier(rel.carrier(),
                       Carrier::product(source.carrier(), target.carrier()),
                       "functional relation");
  detail::RelWorld w;
  w.sort("X", source.carrier())
      .sort("Y", target.carrier())
      .relation("simX", {"X", "X"}, source.rel())
      .relation("simY", {"Y", "Y"}, target.rel())
      .relation("F", {"X", "Y"}, rel);
  FunctionalChecks c;
  c.strict = w.holds("[x:X, y:Y] F(x,y) |- simX(x,x) /\\ simY(y,y)");
  c.relational = w.holds(
      "[x:X, x2:X, y:Y, y2:Y] F(x,y) /\\ simX(x,x2) /\\ simY(y,y2) |- F(x2,y2)");
  c.single_valued = w.holds("[x:X, y:Y, y2:Y] F(x,y) /\\ F(x,y2) |- simY(y,y2)");
  c.total = w.holds("[x:X] simX(x,x) |- E y:Y. F(x,y)");
  return c;
}

/// A morphism of Pers, kept as a chosen representative relation.
class FunctionalRelation {
public:
  FunctionalRelation(Per source, Per target, Predicate rel)
      : source_(std::move(source)), target_(std::move(target)), rel_(std::move(rel)) {
    require_same_carrier(rel_.carrier(),
                         Carrier::product(source_.carrier(), target_.carrier()),
                         "functional relation");
    if (!detail::fast_functional_check(source_, target_, rel_))
      throw Error("relation is not functional");
  }

  const Per& source() const { return source_; }
  const Per& target() const { return target_; }
  const Predicate& rel() const { return rel_; }

  Value rel_at(std::size_t i, std::size_t j) const {
    return rel_.at(rel_.carrier().pair_index(i, j));
  }

  /// Diagrammatic composition: this then g.
  FunctionalRelation then(const FunctionalRelation& g) const {
    require_same_carrier(target_.carrier(), g.source_.carrier(), "composition");
    if (!(target_ == g.source_)) throw Error("composition targets differ");
    Carrier xz = Carrier::product(source_.carrier(), g.target_.carrier());
    std::size_t ys = target_.carrier().size();
    Predicate rel = Predicate::tabulate(xz, [&](std::size_t i) {
      auto [x, z] = xz.unpair(i);
      Value acc = Value::one();  // inf over the middle sort; empty = 1
      for (std::size_t y = 0; y < ys; ++y)
        acc = min(acc, max(rel_at(x, y), g.rel_at(y, z)));
      return acc;
    });
    return FunctionalRelation(source_, g.target_, std::move(rel));
  }

private:
  Per source_;
  Per target_;
  Predicate rel_;
};

inline FunctionalRelation identity_morphism(const Per& p) {
  return FunctionalRelation(p, p, p.rel());
}

/// Composition in diagrammatic order (f first, then g).
inline FunctionalRelation compose_morphisms(const FunctionalRelation& f,
                                            const FunctionalRelation& g) {
  return f.then(g);
}

/// Equality of morphisms: F <= G as predicates. The converse inclusion is
/// derivable (and asserted as a property test), so one direction decides.
inline bool morphism_eq(const FunctionalRelation& f, const FunctionalRelation& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw Error("morphism_eq: different endpoints");
  return leq(f.rel(), g.rel()).holds;
}

/// Monomorphism test: F(x,y), F(x',y) |- x ~ x'.
inline bool is_mono(const FunctionalRelation& f) {
  detail::RelWorld w;
  w.sort("X", f.source().carrier())
      .sort("Y", f.target().carrier())
      .relation("simX", {"X", "X"}, f.source().rel())
      .relation("F", {"X", "Y"}, f.rel());
  return w.holds("[x:X, x2:X, y:Y] F(x,y) /\\ F(x2,y) |- simX(x,x2)");
}

// --- the subobject correspondence ----------------------------------------

/// From a strict predicate phi on (X,~) to the subobject it carves out:
/// the Per (X, ~_phi) with x ~_phi x' = phi(x) /\ x ~ x', together with
/// its monic inclusion into (X,~).
inline std::pair<Per, FunctionalRelation> sub_from_strict(const StrictPredicate& phi) {
  const Per& base = phi.object();
  Carrier sq = Carrier::product(base.carrier(), base.carrier());
  Predicate sub_rel = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [x, x2] = sq.unpair(i);
    return max(phi.pred().at(x), base.rel_at(x, x2));
  });
  Per sub(base.carrier(), sub_rel);
  FunctionalRelation inclusion(sub, base, std::move(sub_rel));
  return {std::move(sub), std::move(inclusion)};
}

/// From a mono F : (Y,~) -> (X,~) back to a strict predicate on (X,~):
/// psi(x) = E y. F(y,x).
inline StrictPredicate strict_from_mono(const FunctionalRelation& f) {
  if (!is_mono(f)) throw PreconditionError("strict_from_mono: morphism is not monic");
  std::size_t ys = f.source().carrier().size();
  Predicate psi = Predicate::tabulate(f.target().carrier(), [&](std::size_t x) {
    Value acc = Value::one();
    for (std::size_t y = 0; y < ys; ++y) acc = min(acc, f.rel_at(y, x));
    return acc;
  });
  return StrictPredicate(f.target(), std::move(psi));
}

// --- the strict hyperdoctrine structure ----------------------------------

/// Left adjoint along a morphism: (exists_F psi)(y) = E x (F(x,y) /\ psi(x)).
inline StrictPredicate strict_exists(const FunctionalRelation& f,
                                     const StrictPredicate& psi) {
  if (!(psi.object() == f.source()))
    throw Error("strict_exists: predicate lives on the wrong object");
  std::size_t xs = f.source().carrier().size();
  Predicate out = Predicate::tabulate(f.target().carrier(), [&](std::size_t y) {
    Value acc = Value::one();
    for (std::size_t x = 0; x < xs; ++x)
      acc = min(acc, max(f.rel_at(x, y), psi.pred().at(x)));
    return acc;
  });
  return StrictPredicate(f.target(), std::move(out));
}

/// Substitution along a morphism: (F* phi)(x) = E y (F(x,y) /\ phi(y)).
inline StrictPredicate strict_pullback(const FunctionalRelation& f,
                                       const StrictPredicate& phi) {
  if (!(phi.object() == f.target()))
    throw Error("strict_pullback: predicate lives on the wrong object");
  std::size_t ys = f.target().carrier().size();
  Predicate out = Predicate::tabulate(f.source().carrier(), [&](std::size_t x) {
    Value acc = Value::one();
    for (std::size_t y = 0; y < ys; ++y)
      acc = min(acc, max(f.rel_at(x, y), phi.pred().at(y)));
    return acc;
  });
  return StrictPredicate(f.source(), std::move(out));
}

/// The binary product of Pers, with the componentwise meet relation.
inline Per per_product(const Per& a, const Per& b) {
  Carrier c = Carrier::product(a.carrier(), b.carrier());
  Carrier sq = Carrier::product(c, c);
  Predicate rel = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [l, r] = sq.unpair(i);
    auto [x, y] = c.unpair(l);
    auto [x2, y2] = c.unpair(r);
    return max(a.rel_at(x, x2), b.rel_at(y, y2));
  });
  return Per(c, std::move(rel));
}

/// The projection (A x B, ~) -> (A, ~) as a functional relation:
/// Pi((x,y), x') = (x,y) ~ (x,y) /\ x ~ x'.
inline FunctionalRelation per_proj_left(const Per& a, const Per& b) {
  Per prod = per_product(a, b);
  Carrier dom = Carrier::product(prod.carrier(), a.carrier());
  Predicate rel = Predicate::tabulate(dom, [&](std::size_t i) {
    auto [z, x2] = dom.unpair(i);
    auto [x, y] = prod.carrier().unpair(z);
    return max(prod.rel_at(z, z), a.rel_at(x, x2));
  });
  (void)b;
  return FunctionalRelation(prod, a, std::move(rel));
}

inline FunctionalRelation per_proj_right(const Per& a, const Per& b) {
  Per prod = per_product(a, b);
  Carrier dom = Carrier::product(prod.carrier(), b.carrier());
  Predicate rel = Predicate::tabulate(dom, [&](std::size_t i) {
    auto [z, y2] = dom.unpair(i);
    auto [x, y] = prod.carrier().unpair(z);
    return max(prod.rel_at(z, z), b.rel_at(y, y2));
  });
  return FunctionalRelation(prod, b, std::move(rel));
}

/// Pairing <F,G> : W -> A x B with relation F(w,a) /\ G(w,b).
inline FunctionalRelation per_pair(const FunctionalRelation& f,
                                   const FunctionalRelation& g) {
  if (!(f.source() == g.source())) throw Error("per_pair: different sources");
  Per prod = per_product(f.target(), g.target());
  Carrier dom = Carrier::product(f.source().carrier(), prod.carrier());
  Predicate rel = Predicate::tabulate(dom, [&](std::size_t i) {
    auto [w, ab] = dom.unpair(i);
    auto [a, b] = prod.carrier().unpair(ab);
    return max(f.rel_at(w, a), g.rel_at(w, b));
  });
  return FunctionalRelation(f.source(), prod, std::move(rel));
}

/// The unique morphism into the unit Per: (w, ()) |-> w ~ w.
inline FunctionalRelation per_terminal(const Per& p) {
  Per unit = unit_per();
  Carrier dom = Carrier::product(p.carrier(), unit.carrier());
  Predicate rel = Predicate::tabulate(
      dom, [&](std::size_t i) { return p.rel_at(dom.unpair(i).first,
                                                dom.unpair(i).first); });
  return FunctionalRelation(p, unit, std::move(rel));
}

/// Right adjoint to substitution along the projection (Y x Z, ~) -> (Y, ~),
/// for reflexive Z: (forall_Pi phi)(y) = y ~ y /\ A z. phi(y,z).
inline StrictPredicate strict_forall_proj(const Per& y, const Per& z,
                                          const StrictPredicate& phi) {
  if (!z.reflexive())
    throw Error("strict_forall_proj: the quantified factor must be reflexive");
  Per prod = per_product(y, z);
  if (!(phi.object() == prod))
    throw Error("strict_forall_proj: predicate lives on the wrong object");
  Predicate out = Predicate::tabulate(y.carrier(), [&](std::size_t yi) {
    Value acc = y.rel_at(yi, yi);
    for (std::size_t zi = 0; zi < z.carrier().size(); ++zi)
      acc = max(acc, phi.pred().at(prod.carrier().pair_index(yi, zi)));
    return acc;
  });
  return StrictPredicate(y, std::move(out));
}

/// Meet, join, top, bottom of strict fibers are computed as in U; the top
/// element is x ~ x rather than the constant 0.
inline StrictPredicate strict_top(const Per& p) {
  return StrictPredicate(p, p.self_rel());
}
inline StrictPredicate strict_bottom(const Per& p) {
  return StrictPredicate(p, bottom(p.carrier()));
}
inline StrictPredicate strict_meet(const StrictPredicate& a, const StrictPredicate& b) {
  if (!(a.object() == b.object())) throw Error("strict_meet: different objects");
  return StrictPredicate(a.object(), meet(a.pred(), b.pred()));
}
inline StrictPredicate strict_join(const StrictPredicate& a, const StrictPredicate& b) {
  if (!(a.object() == b.object())) throw Error("strict_join: different objects");
  return StrictPredicate(a.object(), join(a.pred(), b.pred()));
}
inline bool strict_leq(const StrictPredicate& a, const StrictPredicate& b) {
  return leq(a.pred(), b.pred()).holds;
}
inline bool strict_iso(const StrictPredicate& a, const StrictPredicate& b) {
  return predicates_iso(a.pred(), b.pred());
}

} // namespace culogic
