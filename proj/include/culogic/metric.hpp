#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "culogic/strict.hpp"

namespace culogic {

struct MetricVerdict {
  enum class Kind { Metric, Pseudometric, Invalid };
  Kind kind = Kind::Invalid;
  std::string violation;  // first violated axiom, human readable
};

namespace detail {

inline std::string triple_name(const Carrier& x, std::size_t a, std::size_t b,
                               std::size_t c) {
  return "(" + x.element_name(a) + "," + x.element_name(b) + "," +
         x.element_name(c) + ")";
}

} // namespace detail

/// Exhaustive check of the (pseudo)metric axioms for a [0,1]-valued square
/// table; reports the first violation found.
inline MetricVerdict check_metric_axioms(const Carrier& x, const Predicate& d) {
  require_same_carrier(d.carrier(), Carrier::product(x, x), "metric table");
  const Carrier& sq = d.carrier();
  auto at = [&](std::size_t i, std::size_t j) { return d.at(sq.pair_index(i, j)); };

  MetricVerdict v;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!at(i, i).is_zero()) {
      v.violation = "d(" + x.element_name(i) + "," + x.element_name(i) + ") != 0";
      return v;
    }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (at(i, j) != at(j, i)) {
        v.violation = "symmetry fails at (" + x.element_name(i) + "," +
                      x.element_name(j) + ")";
        return v;
      }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t k = 0; k < x.size(); ++k)
        if (at(i, k).rat() > at(i, j).rat() + at(j, k).rat()) {
          v.violation = "triangle inequality fails at " +
                        detail::triple_name(x, i, j, k);
          return v;
        }
  v.kind = MetricVerdict::Kind::Pseudometric;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j && at(i, j).is_zero()) {
        v.violation = "separation fails at (" + x.element_name(i) + "," +
                      x.element_name(j) + ")";
        return v;
      }
  v.kind = MetricVerdict::Kind::Metric;
  v.violation.clear();
  return v;
}

/// A finite pseudometric space of diameter at most 1.
class FinPseudoMetric {
public:
  FinPseudoMetric(Carrier carrier, Predicate d)
      : carrier_(std::move(carrier)), d_(std::move(d)) {
    MetricVerdict v = check_metric_axioms(carrier_, d_);
    if (v.kind == MetricVerdict::Kind::Invalid)
      throw Error("not a pseudometric: " + v.violation);
  }

  const Carrier& carrier() const { return carrier_; }
  const Predicate& d() const { return d_; }
  Value dist(std::size_t i, std::size_t j) const {
    return d_.at(d_.carrier().pair_index(i, j));
  }
  bool separated() const {
    return check_metric_axioms(carrier_, d_).kind == MetricVerdict::Kind::Metric;
  }

private:
  Carrier carrier_;
  Predicate d_;
};

/// A finite metric space: separation holds. Finite spaces are complete,
/// so no completion machinery appears anywhere.
class FinMetric : public FinPseudoMetric {
public:
  FinMetric(Carrier carrier, Predicate d)
      : FinPseudoMetric(std::move(carrier), std::move(d)) {
    if (!separated()) throw Error("not a metric: separation fails");
  }
};

inline FinPseudoMetric unit_metric() {
  Carrier u = Carrier::unit();
  return FinPseudoMetric(u, top(Carrier::product(u, u)));
}

inline FinPseudoMetric discrete_metric(const Carrier& x) {
  return FinPseudoMetric(x, eq_predicate(x));
}

/// Caps an unbounded nonnegative distance table at 1. The input must
/// already satisfy the pseudometric axioms (over unbounded rationals);
/// the truncated table satisfies them again.
inline FinPseudoMetric truncate_diameter(const Carrier& x,
                                         const std::vector<Rat>& raw) {
  Carrier sq = Carrier::product(x, x);
  if (raw.size() != sq.size()) throw Error("distance table size mismatch");
  for (const Rat& r : raw)
    if (r.is_negative()) throw Error("negative distance");
  auto at = [&](std::size_t i, std::size_t j) { return raw[sq.pair_index(i, j)]; };
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!at(i, i).is_zero()) throw Error("not a pseudometric: d(x,x) != 0");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (at(i, j) != at(j, i)) throw Error("not a pseudometric: asymmetric");
      for (std::size_t k = 0; k < x.size(); ++k)
        if (at(i, k) > at(i, j) + at(j, k))
          throw Error("not a pseudometric: triangle fails");
    }
  Predicate capped = Predicate::tabulate(sq, [&](std::size_t i) {
    Rat r = raw[i];
    return r > Rat(1, 1) ? Value::one() : Value(r);
  });
  return FinPseudoMetric(x, std::move(capped));
}

/// The product in pMet_1: the max metric. Projections are 1-Lipschitz.
inline FinPseudoMetric metric_product(const FinPseudoMetric& m,
                                      const FinPseudoMetric& n) {
  Carrier c = Carrier::product(m.carrier(), n.carrier());
  Carrier sq = Carrier::product(c, c);
  Predicate d = Predicate::tabulate(sq, [&](std::size_t i) {
    auto [l, r] = sq.unpair(i);
    auto [x, y] = c.unpair(l);
    auto [x2, y2] = c.unpair(r);
    return max(m.dist(x, x2), n.dist(y, y2));
  });
  return FinPseudoMetric(c, std::move(d));
}

struct UniformContinuityVerdict {
  bool holds = false;
  std::optional<Modulus> modulus;
  std::optional<std::size_t> witness;  // index into X x X
};

/// Uniform continuity of f : (X,d) -> (Y,d) as an ordering statement:
/// d_X <= d_Y o (f x f). Always holds between genuine finite metrics;
/// can fail out of a pseudometric.
inline UniformContinuityVerdict is_uniformly_continuous(const MapArrow& f,
                                                        const FinPseudoMetric& m,
                                                        const FinPseudoMetric& n) {
  require_same_carrier(f.domain(), m.carrier(), "uniform continuity");
  require_same_carrier(f.codomain(), n.carrier(), "uniform continuity");
  Predicate pulled = pullback(MapArrow::product_map(f, f), n.d());
  LeqVerdict v = leq(m.d(), pulled);
  return {v.holds, v.modulus, v.witness};
}

struct FiberMembershipVerdict {
  bool strict = false;
  bool relational = false;
  std::optional<Modulus> modulus;  // for the relationality ordering
  bool holds() const { return strict && relational; }
};

/// Membership of phi in the continuous-logic fiber over (X,d) at finite
/// scale: the strict-relation sequents over ~ = d. The modulus returned
/// certifies relationality, i.e. the uniform continuity of phi.
inline FiberMembershipVerdict cmt_fiber_check(const Predicate& phi,
                                              const FinPseudoMetric& m) {
  require_same_carrier(phi.carrier(), m.carrier(), "fiber membership");
  FiberMembershipVerdict v;
  // Strictness phi(x) |- d(x,x): trivial since d(x,x) = 0 = top.
  v.strict = true;
  Carrier sq = Carrier::product(m.carrier(), m.carrier());
  Predicate lhs = meet(pullback(MapArrow::proj_left(m.carrier(), m.carrier()), phi),
                       m.d());
  Predicate rhs = pullback(MapArrow::proj_right(m.carrier(), m.carrier()), phi);
  LeqVerdict rel = leq(lhs, rhs);
  v.relational = rel.holds;
  v.modulus = rel.modulus;
  (void)sq;
  return v;
}

// --- the functor into equivalence relations -------------------------------

/// A pseudometric space viewed as an equivalence relation over U.
inline EquivRel g_object(const FinPseudoMetric& m) {
  return EquivRel(m.carrier(), m.d());
}

/// A uniformly continuous map f becomes the functional relation
/// (x,y) |-> d(f(x), y).
inline FunctionalRelation g_morphism(const MapArrow& f, const FinPseudoMetric& m,
                                     const FinPseudoMetric& n) {
  if (!is_uniformly_continuous(f, m, n).holds)
    throw Error("g_morphism: the map is not uniformly continuous");
  Carrier xy = Carrier::product(m.carrier(), n.carrier());
  Predicate rel = Predicate::tabulate(xy, [&](std::size_t i) {
    auto [x, y] = xy.unpair(i);
    return n.dist(f.apply(x), y);
  });
  return FunctionalRelation(g_object(m), g_object(n), std::move(rel));
}

/// Recovers the function from a functional relation between images of
/// genuine metrics: f(x) is the unique y with F(x,y) = 0 (the first in
/// carrier order; separation makes it unique).
inline MapArrow extract_function(const FunctionalRelation& f) {
  const Per& tgt = f.target();
  for (std::size_t y = 0; y < tgt.carrier().size(); ++y)
    for (std::size_t y2 = 0; y2 < tgt.carrier().size(); ++y2)
      if (y != y2 && tgt.rel_at(y, y2).is_zero())
        throw Error("extract_function: target is not separated");
  std::vector<std::size_t> table(f.source().carrier().size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    std::optional<std::size_t> hit;
    for (std::size_t y = 0; y < tgt.carrier().size() && !hit; ++y)
      if (f.rel_at(x, y).is_zero()) hit = y;
    if (!hit) throw Error("extract_function: no zero in row " +
                          f.source().carrier().element_name(x));
    table[x] = *hit;
  }
  return MapArrow(f.source().carrier(), tgt.carrier(), std::move(table));
}

/// The finite-scale reconstruction of a metric from an equivalence
/// relation: zeros of R form an equivalence, and the {0,1} quotient
/// metric d has the same zero pattern, so d and R are isomorphic objects.
struct MetricFromPer {
  FinPseudoMetric metric;
  FunctionalRelation iso;      // g_object(metric) -> E
  FunctionalRelation inverse;  // E -> g_object(metric)
};

inline MetricFromPer metric_from_per(const EquivRel& e) {
  Carrier sq = Carrier::product(e.carrier(), e.carrier());
  Predicate d = Predicate::tabulate(sq, [&](std::size_t i) {
    return e.rel().at(i).is_zero() ? Value::zero() : Value::one();
  });
  FinPseudoMetric m(e.carrier(), d);
  EquivRel ge = g_object(m);
  FunctionalRelation iso(ge, e, d);
  FunctionalRelation inverse(e, ge, d);
  return {std::move(m), std::move(iso), std::move(inverse)};
}

/// Verifies that a morphism pair forms an isomorphism, composing to the
/// identities up to morphism equality.
inline bool is_isomorphism_pair(const FunctionalRelation& f,
                                const FunctionalRelation& g) {
  return morphism_eq(f.then(g), identity_morphism(f.source())) &&
         morphism_eq(g.then(f), identity_morphism(g.source()));
}

/// Finite metric spaces are complete; the completion map is the identity.
inline bool completion_is_identity(const FinMetric& m) {
  FunctionalRelation gid = g_morphism(MapArrow::identity(m.carrier()), m, m);
  return is_isomorphism_pair(gid, gid);
}

/// The five uniformity axioms for the entourage family
/// U_a = {(x,y) : R(x,y) <= a}. Thresholds a range over (0,1], but U_a
/// only changes at the values attained by R, so the family is represented
/// by the attained positive values, 1, and one threshold below every
/// positive value (whose entourage is the zero set itself).
inline bool check_uniformity_axioms(const EquivRel& e) {
  std::size_t n = e.carrier().size();
  std::set<Rat> thresholds;
  for (const Value& v : e.rel().values())
    if (!v.is_zero()) thresholds.insert(v.rat());
  thresholds.insert(Rat(1, 1));
  thresholds.insert(*thresholds.begin() / Rat(2, 1));

  auto entourage = [&](const Rat& a) {
    std::vector<bool> u(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        u[i * n + j] = e.rel_at(i, j).rat() <= a;
    return u;
  };
  auto subset = [&](const std::vector<bool>& u, const std::vector<bool>& v) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] && !v[i]) return false;
    return true;
  };

  std::vector<std::vector<bool>> family;
  for (const Rat& a : thresholds) family.push_back(entourage(a));

  for (const auto& u : family) {
    // (i) contains the diagonal
    for (std::size_t i = 0; i < n; ++i)
      if (!u[i * n + i]) return false;
    // (ii) some member inside the inverse
    std::vector<bool> inv(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv[i * n + j] = u[j * n + i];
    bool ok = false;
    for (const auto& v : family)
      if (subset(v, inv)) { ok = true; break; }
    if (!ok) return false;
    // (iii) some member whose composite lies inside
    ok = false;
    for (const auto& v : family) {
      std::vector<bool> vv(n * n, false);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (v[i * n + k] && v[k * n + j]) vv[i * n + j] = true;
      if (subset(vv, u)) { ok = true; break; }
    }
    if (!ok) return false;
  }
  // (iv) pairwise intersections contain a member
  for (const auto& u : family)
    for (const auto& v : family) {
      std::vector<bool> inter(n * n);
      for (std::size_t i = 0; i < n * n; ++i) inter[i] = u[i] && v[i];
      bool ok = false;
      for (const auto& w : family)
        if (subset(w, inter)) { ok = true; break; }
      if (!ok) return false;
    }
  // (v) upward closure within the family: any member above another is
  // witnessed by itself.
  for (const auto& u : family)
    for (const auto& v : family)
      if (subset(u, v)) {
        bool ok = false;
        for (const auto& w : family)
          if (subset(w, v)) { ok = true; break; }
        if (!ok) return false;
      }
  return true;
}

// --- models over metric spaces and their transfer -------------------------

/// An interpretation whose sorts carry finite pseudometrics: a model of
/// continuous logic at finite scale. Functions must be uniformly
/// continuous and relations must live in the fiber over their product
/// metric.
struct CmtInterpretation {
  Signature signature;
  std::map<std::string, FinPseudoMetric> sorts;
  std::map<std::string, MapArrow> functions;
  std::map<std::string, Predicate> relations;

  const FinPseudoMetric& sort_metric(const std::string& s) const {
    auto it = sorts.find(s);
    if (it == sorts.end()) throw Error("sort '" + s + "' has no metric");
    return it->second;
  }

  /// The fold-product metric over a list of sorts, unit-seeded like the
  /// interpreter's context objects.
  FinPseudoMetric tuple_metric(const std::vector<std::string>& ss) const {
    FinPseudoMetric acc = unit_metric();
    for (const auto& s : ss) acc = metric_product(acc, sort_metric(s));
    return acc;
  }
};

/// Checks the continuous-logic side conditions of a model.
inline void validate_cmt(const CmtInterpretation& I) {
  for (const auto& [name, decl] : I.signature.functions()) {
    auto it = I.functions.find(name);
    if (it == I.functions.end()) throw Error("function '" + name + "' missing");
    if (!is_uniformly_continuous(it->second, I.tuple_metric(decl.args),
                                 I.sort_metric(decl.result))
             .holds)
      throw Error("function '" + name + "' is not uniformly continuous");
  }
  for (const auto& [name, args] : I.signature.relations()) {
    auto it = I.relations.find(name);
    if (it == I.relations.end()) throw Error("relation '" + name + "' missing");
    if (!cmt_fiber_check(it->second, I.tuple_metric(args)).holds())
      throw Error("relation '" + name + "' is not uniformly continuous");
  }
}

/// The forgetful transfer: drop the metrics, keep every table.
inline Interpretation<UBackend> forget_metrics(const CmtInterpretation& I) {
  Interpretation<UBackend> out;
  out.signature = I.signature;
  for (const auto& [s, m] : I.sorts) out.sorts.emplace(s, m.carrier());
  for (const auto& [f, arrow] : I.functions) out.functions.emplace(f, arrow);
  for (const auto& [r, p] : I.relations) out.relations.emplace(r, p);
  return out;
}

/// The discrete transfer: equip every carrier of a U-model with the
/// discrete metric. Every table is uniformly continuous there.
inline CmtInterpretation with_discrete_metrics(const Interpretation<UBackend>& I) {
  CmtInterpretation out;
  out.signature = I.signature;
  for (const auto& [s, c] : I.sorts) out.sorts.emplace(s, discrete_metric(c));
  for (const auto& [f, arrow] : I.functions) out.functions.emplace(f, arrow);
  for (const auto& [r, p] : I.relations) out.relations.emplace(r, p);
  return out;
}

/// Transfer along the embedding into strict predicates over PERs: a sort
/// (X,d) becomes the equivalence relation (X,d), a function becomes its
/// functional relation d(f(x),y), and a relation is read as a strict
/// predicate over the product Per.
inline Interpretation<StrictBackend> transfer_to_strict(const CmtInterpretation& I) {
  validate_cmt(I);
  Interpretation<StrictBackend> out;
  out.signature = I.signature;
  for (const auto& [s, m] : I.sorts) out.sorts.emplace(s, g_object(m));
  for (const auto& [f, arrow] : I.functions) {
    const FunctionDecl& decl = *I.signature.function(f);
    out.functions.emplace(
        f, g_morphism(arrow, I.tuple_metric(decl.args), I.sort_metric(decl.result)));
  }
  for (const auto& [r, p] : I.relations) {
    const auto& args = *I.signature.relation(r);
    FinPseudoMetric tm = I.tuple_metric(args);
    out.relations.emplace(
        r, StrictPredicate(g_object(tm), detail::with_carrier(p, tm.carrier())));
  }
  return out;
}

} // namespace culogic
