#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "culogic/ast.hpp"
#include "culogic/hyperdoctrine.hpp"

namespace culogic {

// The interpreter is generic over a hyperdoctrine backend B providing
//   Object / Morphism / Pred          semantic types
//   unit_object, product, objects_equal, carrier_of
//   identity, terminal_arrow, proj_left, proj_right, pair, compose_m,
//   m_domain, m_codomain
//   top_p, bottom_p, meet_p, join_p, pullback_p, eq_p,
//   exists_proj, forall_proj, apply_conn, leq_p, underlying
// Predicates over the fibers of U and over the strict fibers of the PER
// construction both fit this shape.

struct UBackend {
  using Object = Carrier;
  using Morphism = MapArrow;
  using Pred = Predicate;

  static Object unit_object() { return Carrier::unit(); }
  static Object product(const Object& a, const Object& b) {
    return Carrier::product(a, b);
  }
  static bool objects_equal(const Object& a, const Object& b) { return a == b; }
  static const Carrier& carrier_of(const Object& o) { return o; }

  static Morphism identity(const Object& o) { return MapArrow::identity(o); }
  static Morphism terminal_arrow(const Object& o) { return MapArrow::terminal(o); }
  static Morphism proj_left(const Object& a, const Object& b) {
    return MapArrow::proj_left(a, b);
  }
  static Morphism proj_right(const Object& a, const Object& b) {
    return MapArrow::proj_right(a, b);
  }
  static Morphism pair(const Morphism& f, const Morphism& g) {
    return MapArrow::pair(f, g);
  }
  static Morphism compose_m(const Morphism& g, const Morphism& f) {
    return compose(g, f);
  }
  static Object m_domain(const Morphism& m) { return m.domain(); }
  static Object m_codomain(const Morphism& m) { return m.codomain(); }

  static Pred top_p(const Object& o) { return top(o); }
  static Pred bottom_p(const Object& o) { return bottom(o); }
  static Pred meet_p(const Pred& a, const Pred& b) { return meet(a, b); }
  static Pred join_p(const Pred& a, const Pred& b) { return join(a, b); }
  static Pred pullback_p(const Morphism& f, const Pred& p) { return pullback(f, p); }
  static Pred eq_p(const Object& o) { return eq_predicate(o); }
  static Pred exists_proj(const Object& a, const Object& b, const Pred& p) {
    return exists_along(MapArrow::proj_left(a, b), p);
  }
  static Pred forall_proj(const Object& a, const Object& b, const Pred& p) {
    return forall_along(MapArrow::proj_left(a, b), p);
  }
  static Pred apply_conn(const ConnectiveExpr& u, const std::vector<Pred>& args,
                         const Object& ctx) {
    if (args.empty()) return Predicate::constant(ctx, u.eval({}));
    return apply_connective(u, args);
  }
  static LeqVerdict leq_p(const Pred& a, const Pred& b) { return leq(a, b); }
  static const Predicate& underlying(const Pred& p) { return p; }
};

/// A model: denotations for the sorts, function symbols and relation
/// symbols of a signature in a backend.
template <typename B>
struct Interpretation {
  Signature signature;
  std::map<std::string, typename B::Object> sorts;
  std::map<std::string, typename B::Morphism> functions;
  std::map<std::string, typename B::Pred> relations;

  const typename B::Object& sort_object(const std::string& s) const {
    auto it = sorts.find(s);
    if (it == sorts.end()) throw Error("sort '" + s + "' has no denotation");
    return it->second;
  }
};

namespace detail {

/// The fold-product object of a list of sorts, seeded with the unit so
/// that appending a context variable is always a binary product on the
/// right.
template <typename B>
typename B::Object tuple_object(const Interpretation<B>& I,
                                const std::vector<std::string>& sorts) {
  typename B::Object obj = B::unit_object();
  for (const auto& s : sorts) obj = B::product(obj, I.sort_object(s));
  return obj;
}

template <typename B>
typename B::Object context_object(const Interpretation<B>& I, const Context& ctx) {
  typename B::Object obj = B::unit_object();
  for (const auto& v : ctx) obj = B::product(obj, I.sort_object(v.sort));
  return obj;
}

/// Pairing of a list of arrows out of a common object into the
/// fold-product of their codomains (the unique arrow to the unit when the
/// list is empty).
template <typename B>
typename B::Morphism tuple_arrow(const typename B::Object& domain,
                                 const std::vector<typename B::Morphism>& arrows) {
  typename B::Morphism acc = B::terminal_arrow(domain);
  for (const auto& a : arrows) acc = B::pair(acc, a);
  return acc;
}

} // namespace detail

/// Clause-by-clause interpretation of a term in context: variables become
/// projections, applications compose the function denotation with the
/// paired argument arrows.
template <typename B>
typename B::Morphism interpret_term(const Interpretation<B>& I, const Context& ctx,
                                    const Term& t) {
  if (t.kind == Term::Kind::Var) {
    std::size_t idx = ctx.size();
    for (std::size_t i = ctx.size(); i-- > 0;)
      if (ctx[i].name == t.name) { idx = i; break; }
    if (idx == ctx.size())
      throw Error("unknown variable '" + t.name + "'" + detail::at(t.pos));
    // Projection out of the fold product: peel right factors, then take
    // the right component.
    std::vector<typename B::Object> prefixes;  // prefixes[k] = object of ctx[0..k)
    typename B::Object obj = B::unit_object();
    prefixes.push_back(obj);
    for (const auto& v : ctx) {
      obj = B::product(obj, I.sort_object(v.sort));
      prefixes.push_back(obj);
    }
    typename B::Morphism arrow =
        B::proj_right(prefixes[idx], I.sort_object(ctx[idx].sort));
    for (std::size_t k = idx + 1; k < ctx.size(); ++k)
      arrow = B::compose_m(
          arrow, B::proj_left(prefixes[k], I.sort_object(ctx[k].sort)));
    return arrow;
  }

  const FunctionDecl* d = I.signature.function(t.name);
  if (!d) throw Error("unknown function '" + t.name + "'" + detail::at(t.pos));
  auto it = I.functions.find(t.name);
  if (it == I.functions.end())
    throw Error("function '" + t.name + "' has no denotation");
  std::vector<typename B::Morphism> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(interpret_term(I, ctx, a));
  return B::compose_m(it->second,
                      detail::tuple_arrow<B>(detail::context_object(I, ctx), args));
}

/// Structural interpretation of a formula in context, yielding a predicate
/// over the context object.
template <typename B>
typename B::Pred interpret_formula(const Interpretation<B>& I, const Context& ctx,
                                   const Formula& f) {
  typename B::Object cobj = detail::context_object(I, ctx);
  switch (f.kind) {
    case Formula::Kind::Top: return B::top_p(cobj);
    case Formula::Kind::Bot: return B::bottom_p(cobj);
    case Formula::Kind::Rel: {
      auto it = I.relations.find(f.name);
      if (it == I.relations.end())
        throw Error("relation '" + f.name + "' has no denotation" + detail::at(f.pos));
      std::vector<typename B::Morphism> args;
      for (const auto& t : f.terms) args.push_back(interpret_term(I, ctx, t));
      return B::pullback_p(detail::tuple_arrow<B>(cobj, args), it->second);
    }
    case Formula::Kind::Eq: {
      std::string s = term_sort(I.signature, ctx, f.terms[0]);
      typename B::Morphism lhs = interpret_term(I, ctx, f.terms[0]);
      typename B::Morphism rhs = interpret_term(I, ctx, f.terms[1]);
      return B::pullback_p(B::pair(lhs, rhs), B::eq_p(I.sort_object(s)));
    }
    case Formula::Kind::And:
      return B::meet_p(interpret_formula(I, ctx, f.kids[0]),
                       interpret_formula(I, ctx, f.kids[1]));
    case Formula::Kind::Or:
      return B::join_p(interpret_formula(I, ctx, f.kids[0]),
                       interpret_formula(I, ctx, f.kids[1]));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      Context inner = ctx;
      inner.push_back({f.name, f.sort});
      typename B::Pred body = interpret_formula(I, inner, f.kids[0]);
      const typename B::Object& sobj = I.sort_object(f.sort);
      return f.kind == Formula::Kind::Exists ? B::exists_proj(cobj, sobj, body)
                                             : B::forall_proj(cobj, sobj, body);
    }
    case Formula::Kind::Conn: {
      std::vector<typename B::Pred> args;
      for (const auto& k : f.kids) args.push_back(interpret_formula(I, ctx, k));
      return B::apply_conn(*f.conn, args, cobj);
    }
  }
  throw Error("unreachable");
}

struct SequentVerdict {
  bool valid = false;
  std::optional<Modulus> modulus;           // forward direction, when valid
  std::optional<std::string> countermodel;  // witness binding, when invalid
  bool failed_backward = false;             // bidirectional only
};

namespace detail {

/// Renders a witness element of the context object as a variable binding.
template <typename B>
std::string render_witness(const Interpretation<B>& I, const Context& ctx,
                           std::size_t index) {
  if (ctx.empty()) return "()";
  std::vector<std::size_t> components(ctx.size());
  for (std::size_t i = ctx.size(); i-- > 0;) {
    std::size_t size = B::carrier_of(I.sort_object(ctx[i].sort)).size();
    components[i] = index % size;
    index /= size;
  }
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + "=" +
           B::carrier_of(I.sort_object(ctx[i].sort)).element_name(components[i]);
  }
  return out;
}

} // namespace detail

/// Sequent validity: lhs <= rhs in the fiber over the context object.
/// Bidirectional sequents check both directions; the modulus reported is
/// the forward one.
template <typename B>
SequentVerdict check_sequent(const Interpretation<B>& I, const SequentAst& s) {
  sort_check(I.signature, s);
  typename B::Pred lhs = interpret_formula(I, s.context, s.lhs);
  typename B::Pred rhs = interpret_formula(I, s.context, s.rhs);

  SequentVerdict verdict;
  LeqVerdict forward = B::leq_p(lhs, rhs);
  if (!forward.holds) {
    verdict.valid = false;
    verdict.countermodel = detail::render_witness(I, s.context, *forward.witness);
    return verdict;
  }
  if (s.bidirectional) {
    LeqVerdict backward = B::leq_p(rhs, lhs);
    if (!backward.holds) {
      verdict.valid = false;
      verdict.failed_backward = true;
      verdict.countermodel = detail::render_witness(I, s.context, *backward.witness);
      return verdict;
    }
  }
  verdict.valid = true;
  verdict.modulus = forward.modulus;
  return verdict;
}

/// Interpretation sanity: all symbols have denotations of the right shape.
template <typename B>
void validate_interpretation(const Interpretation<B>& I) {
  for (const auto& s : I.signature.sorts()) I.sort_object(s);
  for (const auto& [name, decl] : I.signature.functions()) {
    auto it = I.functions.find(name);
    if (it == I.functions.end())
      throw Error("function '" + name + "' has no denotation");
    if (!B::objects_equal(B::m_domain(it->second),
                          detail::tuple_object(I, decl.args)) ||
        !B::objects_equal(B::m_codomain(it->second), I.sort_object(decl.result)))
      throw Error("function '" + name + "' denotation has the wrong shape");
  }
  for (const auto& [name, args] : I.signature.relations()) {
    auto it = I.relations.find(name);
    if (it == I.relations.end())
      throw Error("relation '" + name + "' has no denotation");
    if (B::carrier_of(detail::tuple_object(I, args)) !=
        B::underlying(it->second).carrier())
      throw Error("relation '" + name + "' denotation has the wrong carrier");
  }
}

} // namespace culogic
