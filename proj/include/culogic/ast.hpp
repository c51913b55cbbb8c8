#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "culogic/connective.hpp"

namespace culogic {

struct SourcePos {
  std::size_t line = 0;    // 1-based; 0 for synthetic nodes
  std::size_t column = 0;
};

struct Term {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  std::string name;         // variable or function symbol
  std::vector<Term> args;   // App only
  SourcePos pos;

  static Term var(std::string n, SourcePos p = {}) {
    Term t;
    t.kind = Kind::Var;
    t.name = std::move(n);
    t.pos = p;
    return t;
  }
  static Term app(std::string f, std::vector<Term> as, SourcePos p = {}) {
    Term t;
    t.kind = Kind::App;
    t.name = std::move(f);
    t.args = std::move(as);
    t.pos = p;
    return t;
  }
};

/// Formulas of many-sorted (universally) coherent logic, plus an extension
/// node for connective application.
struct Formula {
  enum class Kind { Top, Bot, Rel, Eq, And, Or, Exists, Forall, Conn };
  Kind kind = Kind::Top;
  std::string name;                    // Rel symbol or bound variable
  std::string sort;                    // quantifier sort
  std::vector<Term> terms;             // Rel arguments or Eq sides
  std::vector<Formula> kids;           // subformulas
  std::optional<ConnectiveExpr> conn;  // Conn only
  SourcePos pos;
};

inline Formula f_top() { return Formula{}; }
inline Formula f_bot() {
  Formula f;
  f.kind = Formula::Kind::Bot;
  return f;
}
inline Formula f_rel(std::string r, std::vector<Term> ts, SourcePos p = {}) {
  Formula f;
  f.kind = Formula::Kind::Rel;
  f.name = std::move(r);
  f.terms = std::move(ts);
  f.pos = p;
  return f;
}
inline Formula f_eq(Term a, Term b, SourcePos p = {}) {
  Formula f;
  f.kind = Formula::Kind::Eq;
  f.terms = {std::move(a), std::move(b)};
  f.pos = p;
  return f;
}
inline Formula f_and(Formula a, Formula b) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.kids = {std::move(a), std::move(b)};
  return f;
}
inline Formula f_or(Formula a, Formula b) {
  Formula f;
  f.kind = Formula::Kind::Or;
  f.kids = {std::move(a), std::move(b)};
  return f;
}
inline Formula f_exists(std::string v, std::string sort, Formula body) {
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.name = std::move(v);
  f.sort = std::move(sort);
  f.kids = {std::move(body)};
  return f;
}
inline Formula f_forall(std::string v, std::string sort, Formula body) {
  Formula f;
  f.kind = Formula::Kind::Forall;
  f.name = std::move(v);
  f.sort = std::move(sort);
  f.kids = {std::move(body)};
  return f;
}
inline Formula f_conn(ConnectiveExpr u, std::vector<Formula> args, SourcePos p = {}) {
  Formula f;
  f.kind = Formula::Kind::Conn;
  f.conn = std::move(u);
  f.kids = std::move(args);
  f.pos = p;
  return f;
}

/// Conjunction of a nonempty list, folded left.
inline Formula f_and_all(std::vector<Formula> fs) {
  if (fs.empty()) return f_top();
  Formula acc = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(std::move(acc), std::move(fs[i]));
  return acc;
}

struct ContextVar {
  std::string name;
  std::string sort;
};
using Context = std::vector<ContextVar>;

struct SequentAst {
  Context context;
  Formula lhs, rhs;
  bool bidirectional = false;
  SourcePos pos;
  std::string text;  // source echo, empty for synthetic sequents
};

struct FunctionDecl {
  std::vector<std::string> args;
  std::string result;
};

class Signature {
public:
  void add_sort(const std::string& s) {
    if (has_sort(s)) throw Error("duplicate sort '" + s + "'");
    sorts_.push_back(s);
  }
  void add_function(const std::string& f, FunctionDecl d) {
    if (functions_.count(f)) throw Error("duplicate function '" + f + "'");
    functions_.emplace(f, std::move(d));
  }
  void add_relation(const std::string& r, std::vector<std::string> args) {
    if (relations_.count(r)) throw Error("duplicate relation '" + r + "'");
    relations_.emplace(r, std::move(args));
  }

  bool has_sort(const std::string& s) const {
    for (const auto& t : sorts_)
      if (t == s) return true;
    return false;
  }
  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::map<std::string, FunctionDecl>& functions() const { return functions_; }
  const std::map<std::string, std::vector<std::string>>& relations() const {
    return relations_;
  }
  const FunctionDecl* function(const std::string& f) const {
    auto it = functions_.find(f);
    return it == functions_.end() ? nullptr : &it->second;
  }
  const std::vector<std::string>* relation(const std::string& r) const {
    auto it = relations_.find(r);
    return it == relations_.end() ? nullptr : &it->second;
  }

private:
  std::vector<std::string> sorts_;
  std::map<std::string, FunctionDecl> functions_;
  std::map<std::string, std::vector<std::string>> relations_;
};

struct Theory {
  Signature signature;
  std::vector<SequentAst> sequents;
};

// --- sort checking ---------------------------------------------------------

namespace detail {
inline std::string at(SourcePos p) {
  if (p.line == 0) return "";
  return " at " + std::to_string(p.line) + ":" + std::to_string(p.column);
}
} // namespace detail

/// Infers the sort of a term in context; throws on ill-sorted input.
/// Shadowed variables resolve to the innermost (rightmost) binding.
inline std::string term_sort(const Signature& sig, const Context& ctx, const Term& t) {
  if (t.kind == Term::Kind::Var) {
    for (std::size_t i = ctx.size(); i-- > 0;)
      if (ctx[i].name == t.name) return ctx[i].sort;
    throw Error("unknown variable '" + t.name + "'" + detail::at(t.pos));
  }
  const FunctionDecl* d = sig.function(t.name);
  if (!d) throw Error("unknown function '" + t.name + "'" + detail::at(t.pos));
  if (d->args.size() != t.args.size())
    throw Error("function '" + t.name + "' expects " +
                std::to_string(d->args.size()) + " argument(s)" + detail::at(t.pos));
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    std::string got = term_sort(sig, ctx, t.args[i]);
    if (got != d->args[i])
      throw Error("argument " + std::to_string(i + 1) + " of '" + t.name +
                  "' has sort " + got + ", expected " + d->args[i] +
                  detail::at(t.args[i].pos));
  }
  return d->result;
}

inline void sort_check(const Signature& sig, const Context& ctx, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return;
    case Formula::Kind::Rel: {
      const auto* args = sig.relation(f.name);
      if (!args) throw Error("unknown relation '" + f.name + "'" + detail::at(f.pos));
      if (args->size() != f.terms.size())
        throw Error("relation '" + f.name + "' expects " +
                    std::to_string(args->size()) + " argument(s)" + detail::at(f.pos));
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        std::string got = term_sort(sig, ctx, f.terms[i]);
        if (got != (*args)[i])
          throw Error("argument " + std::to_string(i + 1) + " of '" + f.name +
                      "' has sort " + got + ", expected " + (*args)[i] +
                      detail::at(f.terms[i].pos));
      }
      return;
    }
    case Formula::Kind::Eq: {
      std::string a = term_sort(sig, ctx, f.terms[0]);
      std::string b = term_sort(sig, ctx, f.terms[1]);
      if (a != b)
        throw Error("equality between sorts " + a + " and " + b + detail::at(f.pos));
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
      sort_check(sig, ctx, f.kids[0]);
      sort_check(sig, ctx, f.kids[1]);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (!sig.has_sort(f.sort))
        throw Error("unknown sort '" + f.sort + "'" + detail::at(f.pos));
      Context inner = ctx;
      inner.push_back({f.name, f.sort});
      sort_check(sig, inner, f.kids[0]);
      return;
    }
    case Formula::Kind::Conn: {
      if (f.conn->max_var() > f.kids.size())
        throw Error("connective uses more arguments than supplied" + detail::at(f.pos));
      for (const auto& k : f.kids) sort_check(sig, ctx, k);
      return;
    }
  }
}

inline void sort_check(const Signature& sig, const SequentAst& s) {
  for (const auto& v : s.context)
    if (!sig.has_sort(v.sort))
      throw Error("unknown sort '" + v.sort + "' in context" + detail::at(s.pos));
  sort_check(sig, s.context, s.lhs);
  sort_check(sig, s.context, s.rhs);
}

/// All connective expressions appearing in a formula, for the
/// equivalence-preservation warnings.
inline void collect_connectives(const Formula& f,
                                std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::Conn) out.push_back(&f);
  for (const auto& k : f.kids) collect_connectives(k, out);
}

} // namespace culogic
