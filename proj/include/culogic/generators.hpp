#pragma once

#include <string>
#include <vector>

#include "culogic/hyperdoctrine.hpp"
#include "culogic/interpreter.hpp"

namespace culogic::gen {

// Seeded random instances for the law suites. Everything routes through
// Rng so results are reproducible across platforms.

inline Value value(Rng& rng) {
  static const Value pool[] = {
      Value(0, 1),  Value(0, 1),  Value(0, 1),  Value(1, 1),  Value(1, 2),
      Value(1, 3),  Value(2, 3),  Value(1, 4),  Value(3, 4),  Value(1, 5),
      Value(1, 8),  Value(9, 10), Value(1, 16), Value(5, 6),  Value(1, 1024)};
  return pool[rng.below(sizeof(pool) / sizeof(pool[0]))];
}

inline Value positive_value(Rng& rng) {
  Value v = value(rng);
  return v.is_zero() ? Value(1, 2) : v;
}

/// An atoms carrier with `n` fresh elements.
inline Carrier atoms(std::size_t n, const std::string& stem = "e") {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i));
  return Carrier::atoms(std::move(names));
}

inline Carrier carrier(Rng& rng, std::size_t max_size, std::size_t min_size = 0) {
  return atoms(min_size + rng.below(max_size - min_size + 1));
}

inline Predicate predicate(Rng& rng, const Carrier& x) {
  return Predicate::tabulate(x, [&](std::size_t) { return value(rng); });
}

/// A random total map; the codomain must be nonempty unless the domain is.
inline MapArrow map(Rng& rng, const Carrier& dom, const Carrier& cod) {
  if (cod.size() == 0 && dom.size() > 0)
    throw Error("no map into an empty carrier");
  std::vector<std::size_t> t(dom.size());
  for (auto& v : t) v = rng.below(cod.size());
  return MapArrow(dom, cod, std::move(t));
}

/// A random signature: one or two sorts, a few function and relation
/// symbols of arity up to two.
inline Signature signature(Rng& rng) {
  Signature sig;
  std::size_t nsorts = 1 + rng.below(2);
  for (std::size_t i = 0; i < nsorts; ++i) sig.add_sort("S" + std::to_string(i));
  auto some_sort = [&] { return "S" + std::to_string(rng.below(nsorts)); };

  std::size_t nfuns = rng.below(3);
  for (std::size_t i = 0; i < nfuns; ++i) {
    FunctionDecl d;
    std::size_t arity = rng.below(3);  // 0 = a constant
    for (std::size_t a = 0; a < arity; ++a) d.args.push_back(some_sort());
    d.result = some_sort();
    sig.add_function("f" + std::to_string(i), std::move(d));
  }
  std::size_t nrels = 1 + rng.below(3);
  for (std::size_t i = 0; i < nrels; ++i) {
    std::vector<std::string> args;
    std::size_t arity = 1 + rng.below(2);
    for (std::size_t a = 0; a < arity; ++a) args.push_back(some_sort());
    sig.add_relation("R" + std::to_string(i), std::move(args));
  }
  return sig;
}

/// A random model of a signature over U, with sort carriers of
/// 1..max_elems atoms.
inline Interpretation<UBackend> model(Rng& rng, const Signature& sig,
                                      std::size_t max_elems) {
  Interpretation<UBackend> I;
  I.signature = sig;
  for (const auto& s : sig.sorts())
    I.sorts.emplace(s, atoms(1 + rng.below(max_elems), s + "_"));
  for (const auto& [name, decl] : sig.functions()) {
    Carrier dom = Carrier::unit();
    for (const auto& a : decl.args) dom = Carrier::product(dom, I.sorts.at(a));
    I.functions.emplace(name, map(rng, dom, I.sorts.at(decl.result)));
  }
  for (const auto& [name, args] : sig.relations()) {
    Carrier dom = Carrier::unit();
    for (const auto& a : args) dom = Carrier::product(dom, I.sorts.at(a));
    I.relations.emplace(name, predicate(rng, dom));
  }
  return I;
}

/// A random well-sorted term of the given sort, or nullopt if the context
/// and signature cannot produce one within the depth budget.
inline std::optional<Term> term(Rng& rng, const Signature& sig, const Context& ctx,
                                const std::string& sort, std::size_t depth) {
  std::vector<Term> vars;
  for (const auto& v : ctx)
    if (v.sort == sort) vars.push_back(Term::var(v.name));
  std::vector<const std::pair<const std::string, FunctionDecl>*> funs;
  for (const auto& f : sig.functions())
    if (f.second.result == sort && (depth > 0 || f.second.args.empty()))
      funs.push_back(&f);

  bool try_fun = !funs.empty() && (vars.empty() || rng.coin());
  if (try_fun) {
    const auto* f = funs[rng.below(funs.size())];
    std::vector<Term> args;
    for (const auto& a : f->second.args) {
      auto sub = term(rng, sig, ctx, a, depth - 1);
      if (!sub) { try_fun = false; break; }
      args.push_back(std::move(*sub));
    }
    if (try_fun) return Term::app(f->first, std::move(args));
  }
  if (!vars.empty()) return vars[rng.below(vars.size())];
  return std::nullopt;
}

/// A random well-sorted formula. Connective nodes are included only when
/// allow_conn is set (they fall outside the coherent fragment).
inline Formula formula(Rng& rng, const Signature& sig, const Context& ctx,
                       std::size_t depth, bool allow_conn) {
  auto atom = [&]() -> Formula {
    for (int attempt = 0; attempt < 4; ++attempt) {
      switch (rng.below(4)) {
        case 0: return f_top();
        case 1: return f_bot();
        case 2: {  // relation application
          const auto& rels = sig.relations();
          if (rels.empty()) continue;
          std::size_t pick = rng.below(rels.size());
          auto it = rels.begin();
          std::advance(it, pick);
          std::vector<Term> args;
          bool ok = true;
          for (const auto& s : it->second) {
            auto t = term(rng, sig, ctx, s, 1);
            if (!t) { ok = false; break; }
            args.push_back(std::move(*t));
          }
          if (ok) return f_rel(it->first, std::move(args));
          continue;
        }
        default: {  // equality
          if (sig.sorts().empty()) continue;
          const std::string& s = sig.sorts()[rng.below(sig.sorts().size())];
          auto a = term(rng, sig, ctx, s, 1);
          auto b = term(rng, sig, ctx, s, 1);
          if (a && b) return f_eq(std::move(*a), std::move(*b));
          continue;
        }
      }
    }
    return f_top();
  };

  if (depth == 0) return atom();
  switch (rng.below(allow_conn ? 7 : 6)) {
    case 0: return atom();
    case 1:
      return f_and(formula(rng, sig, ctx, depth - 1, allow_conn),
                   formula(rng, sig, ctx, depth - 1, allow_conn));
    case 2:
      return f_or(formula(rng, sig, ctx, depth - 1, allow_conn),
                  formula(rng, sig, ctx, depth - 1, allow_conn));
    case 3:
    case 4: {
      std::string v = "q" + std::to_string(rng.below(1000));
      const std::string& s = sig.sorts()[rng.below(sig.sorts().size())];
      Context inner = ctx;
      inner.push_back({v, s});
      Formula body = formula(rng, sig, inner, depth - 1, allow_conn);
      return rng.coin() ? f_exists(v, s, std::move(body))
                        : f_forall(v, s, std::move(body));
    }
    case 5: {
      // Deepen through one side of a conjunction for variety.
      return f_and(atom(), formula(rng, sig, ctx, depth - 1, allow_conn));
    }
    default: {
      static const char* exprs[] = {"min(x,y)", "max(x,y)", "x +. y", "1/2*x"};
      ConnectiveExpr u = ConnectiveExpr::parse(exprs[rng.below(4)]);
      std::vector<Formula> args;
      for (std::size_t i = 0; i < u.max_var(); ++i)
        args.push_back(formula(rng, sig, ctx, depth - 1, allow_conn));
      return f_conn(std::move(u), std::move(args));
    }
  }
}

/// A random sequent over the signature.
inline SequentAst sequent(Rng& rng, const Signature& sig, std::size_t depth,
                          bool allow_conn) {
  SequentAst s;
  std::size_t nvars = rng.below(3);
  for (std::size_t i = 0; i < nvars; ++i)
    s.context.push_back({"v" + std::to_string(i),
                         sig.sorts()[rng.below(sig.sorts().size())]});
  s.lhs = formula(rng, sig, s.context, depth, allow_conn);
  s.rhs = formula(rng, sig, s.context, depth, allow_conn);
  s.bidirectional = rng.below(4) == 0;
  return s;
}

} // namespace culogic::gen
