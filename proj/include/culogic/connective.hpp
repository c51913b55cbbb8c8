#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "culogic/predicate.hpp"

namespace culogic {

/// An n-ary connective on truth values, given as an expression over a
/// fixed grammar of 1-Lipschitz (or q-Lipschitz) constructors. Evaluation
/// at rational points is exact.
class ConnectiveExpr {
public:
  enum class Kind { Const, Var, Min, Max, TSub, TAdd, Scale, Negate };

  static ConnectiveExpr constant(Value q) { return ConnectiveExpr(Kind::Const, q, {}); }
  /// Variables are 1-based.
  static ConnectiveExpr var(std::size_t i) {
    if (i == 0) throw Error("connective variables are 1-based");
    ConnectiveExpr e(Kind::Var, Value::zero(), {});
    e.index_ = i;
    return e;
  }
  static ConnectiveExpr min_of(ConnectiveExpr a, ConnectiveExpr b) {
    return ConnectiveExpr(Kind::Min, Value::zero(), {std::move(a), std::move(b)});
  }
  static ConnectiveExpr max_of(ConnectiveExpr a, ConnectiveExpr b) {
    return ConnectiveExpr(Kind::Max, Value::zero(), {std::move(a), std::move(b)});
  }
  /// max(a - b, 0).
  static ConnectiveExpr tsub(ConnectiveExpr a, ConnectiveExpr b) {
    return ConnectiveExpr(Kind::TSub, Value::zero(), {std::move(a), std::move(b)});
  }
  /// min(a + b, 1).
  static ConnectiveExpr tadd(ConnectiveExpr a, ConnectiveExpr b) {
    return ConnectiveExpr(Kind::TAdd, Value::zero(), {std::move(a), std::move(b)});
  }
  static ConnectiveExpr scale(Value q, ConnectiveExpr e) {
    return ConnectiveExpr(Kind::Scale, q, {std::move(e)});
  }
  /// 1 - e.
  static ConnectiveExpr negate(ConnectiveExpr e) {
    return ConnectiveExpr(Kind::Negate, Value::zero(), {std::move(e)});
  }

  Kind kind() const { return kind_; }
  const Value& constant_value() const { return q_; }
  std::size_t var_index() const { return index_; }
  const std::vector<ConnectiveExpr>& children() const { return kids_; }

  /// Smallest arity this expression fits in.
  std::size_t max_var() const {
    std::size_t m = kind_ == Kind::Var ? index_ : 0;
    for (const auto& k : kids_) m = std::max(m, k.max_var());
    return m;
  }

  Value eval(const std::vector<Value>& point) const {
    switch (kind_) {
      case Kind::Const: return q_;
      case Kind::Var:
        if (index_ > point.size()) throw Error("connective arity mismatch");
        return point[index_ - 1];
      case Kind::Min: return min(kids_[0].eval(point), kids_[1].eval(point));
      case Kind::Max: return max(kids_[0].eval(point), kids_[1].eval(point));
      case Kind::TSub: return truncated_sub(kids_[0].eval(point), kids_[1].eval(point));
      case Kind::TAdd: return truncated_add(kids_[0].eval(point), kids_[1].eval(point));
      case Kind::Scale: return Value(q_.rat() * kids_[0].eval(point).rat());
      case Kind::Negate: return complement(kids_[0].eval(point));
    }
    throw Error("unreachable");
  }

  /// Renders in the CLI expression syntax.
  std::string str() const {
    switch (kind_) {
      case Kind::Const: return q_.str();
      case Kind::Var: return var_name(index_);
      case Kind::Min: return "min(" + kids_[0].str() + ", " + kids_[1].str() + ")";
      case Kind::Max: return "max(" + kids_[0].str() + ", " + kids_[1].str() + ")";
      case Kind::TSub: return "(" + kids_[0].str() + " -. " + kids_[1].str() + ")";
      case Kind::TAdd: return "(" + kids_[0].str() + " +. " + kids_[1].str() + ")";
      case Kind::Scale: return q_.str() + "*(" + kids_[0].str() + ")";
      case Kind::Negate: return "1-(" + kids_[0].str() + ")";
    }
    throw Error("unreachable");
  }

  static std::string var_name(std::size_t i) {
    if (i == 1) return "x";
    if (i == 2) return "y";
    if (i == 3) return "z";
    return "x" + std::to_string(i);
  }

  /// If the expression denotes a constant function, its value.
  std::optional<Value> constant_fold() const {
    switch (kind_) {
      case Kind::Const: return q_;
      case Kind::Var: return std::nullopt;
      case Kind::Scale: {
        if (q_.is_zero()) return Value::zero();
        auto c = kids_[0].constant_fold();
        if (!c) return std::nullopt;
        return Value(q_.rat() * c->rat());
      }
      case Kind::Negate: {
        auto c = kids_[0].constant_fold();
        return c ? std::optional<Value>(complement(*c)) : std::nullopt;
      }
      default: {
        auto a = kids_[0].constant_fold();
        auto b = kids_[1].constant_fold();
        if (!a || !b) return std::nullopt;
        switch (kind_) {
          case Kind::Min: return min(*a, *b);
          case Kind::Max: return max(*a, *b);
          case Kind::TSub: return truncated_sub(*a, *b);
          case Kind::TAdd: return truncated_add(*a, *b);
          default: throw Error("unreachable");
        }
      }
    }
  }

  static ConnectiveExpr parse(std::string_view text);

private:
  ConnectiveExpr(Kind kind, Value q, std::vector<ConnectiveExpr> kids)
      : kind_(kind), q_(q), kids_(std::move(kids)) {}

  Kind kind_;
  Value q_;
  std::size_t index_ = 0;
  std::vector<ConnectiveExpr> kids_;
};

/// A stratum Z_K of the cube: the points whose zero coordinates are
/// exactly K. Encoded as a bitmask (bit i-1 set iff variable i is in K).
using StratumMask = std::uint32_t;

enum class StratumStatus { AllZero, NoZero, Mixed };

struct StratumReport {
  StratumMask mask = 0;
  StratumStatus status = StratumStatus::NoZero;
  std::size_t samples = 0;
};

struct ClassifierVerdict {
  enum class Kind { Preserves, Violates, Unknown };
  Kind kind = Kind::Unknown;
  /// Preserves only: true when backed by the exact symbolic stratification,
  /// false when grid-bounded (sampling only).
  bool certified = false;
  Rat grid_h = Rat(1, 16);
  std::vector<StratumReport> strata;
  /// Violates only: points with identical zero patterns, u(p)=0 < u(q).
  std::vector<Value> witness_p, witness_q;
};

/// Exact stratification for the fragment of the grammar whose zero set is
/// determined by zero patterns alone: min/max/tadd/scale compose freely,
/// constants fold, and negate/tsub survive only in degenerate positions.
/// Returns one flag per stratum mask (true = the stratum lies in the zero
/// set), or nullopt when the zero set may cut through a stratum.
inline std::optional<std::vector<bool>> symbolic_strata(const ConnectiveExpr& e,
                                                        std::size_t n) {
  std::size_t count = std::size_t(1) << n;
  auto all = [&](bool b) { return std::vector<bool>(count, b); };
  if (auto c = e.constant_fold()) return all(c->is_zero());
  switch (e.kind()) {
    case ConnectiveExpr::Kind::Const:
      return all(e.constant_value().is_zero());
    case ConnectiveExpr::Kind::Var: {
      std::vector<bool> s(count);
      for (std::size_t mask = 0; mask < count; ++mask)
        s[mask] = (mask >> (e.var_index() - 1)) & 1;
      return s;
    }
    case ConnectiveExpr::Kind::Min: {
      auto a = symbolic_strata(e.children()[0], n);
      auto b = symbolic_strata(e.children()[1], n);
      if (!a || !b) return std::nullopt;
      for (std::size_t i = 0; i < count; ++i) (*a)[i] = (*a)[i] || (*b)[i];
      return a;
    }
    case ConnectiveExpr::Kind::Max:
    case ConnectiveExpr::Kind::TAdd: {
      auto a = symbolic_strata(e.children()[0], n);
      auto b = symbolic_strata(e.children()[1], n);
      if (!a || !b) return std::nullopt;
      for (std::size_t i = 0; i < count; ++i) (*a)[i] = (*a)[i] && (*b)[i];
      return a;
    }
    case ConnectiveExpr::Kind::Scale:
      // q = 0 was folded away above.
      return symbolic_strata(e.children()[0], n);
    case ConnectiveExpr::Kind::Negate: {
      auto a = symbolic_strata(e.children()[0], n);
      if (a && std::all_of(a->begin(), a->end(), [](bool b) { return b; }))
        return all(false);  // child is identically 0, so 1-child never is
      return std::nullopt;
    }
    case ConnectiveExpr::Kind::TSub: {
      auto a = symbolic_strata(e.children()[0], n);
      if (a && std::all_of(a->begin(), a->end(), [](bool b) { return b; }))
        return all(true);  // 0 -. b is identically 0
      auto b = symbolic_strata(e.children()[1], n);
      if (a && b && std::all_of(b->begin(), b->end(), [](bool v) { return v; }))
        return a;  // a -. 0 vanishes exactly where a does
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Classifies a connective: does it preserve logical equivalence? The
/// criterion is that the zero set is a union of strata. A symbolic pass
/// certifies the stratified fragment exactly; otherwise each stratum is
/// sampled on the grid {h,2h,...,1} off K (coordinates in K pinned to 0).
/// A stratum holding both a zero and a nonzero sample yields a genuine
/// violation pair, since the two samples share a zero pattern.
inline ClassifierVerdict classify(const ConnectiveExpr& u, std::size_t n,
                                  const Rat& h = Rat(1, 16)) {
  if (n == 0 || n < u.max_var()) throw Error("classify: bad arity");
  if (h.num() != 1 || h.den() < 2 || (h.den() & (h.den() - 1)) != 0)
    throw Error("classify: grid resolution must be 1/2^k, k >= 1");

  ClassifierVerdict verdict;
  verdict.grid_h = h;

  if (auto strata = symbolic_strata(u, n)) {
    verdict.kind = ClassifierVerdict::Kind::Preserves;
    verdict.certified = true;
    for (StratumMask mask = 0; mask < (StratumMask)strata->size(); ++mask)
      verdict.strata.push_back({mask,
                                (*strata)[mask] ? StratumStatus::AllZero
                                                : StratumStatus::NoZero,
                                0});
    return verdict;
  }

  long long steps = h.den();  // grid points per free coordinate
  // Guard against blowing up on high arities; the verdict stays honest.
  double budget = 1.0;
  for (std::size_t i = 0; i < n; ++i) budget *= (double)steps + 1;
  if (budget > (double)(1 << 22)) {
    verdict.kind = ClassifierVerdict::Kind::Unknown;
    return verdict;
  }

  for (StratumMask mask = 0; mask < (StratumMask)(1u << n); ++mask) {
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < n; ++i)
      if (!((mask >> i) & 1)) free_vars.push_back(i);

    std::vector<Value> point(n, Value::zero());
    std::vector<long long> odo(free_vars.size(), 1);
    std::optional<std::vector<Value>> first_zero, first_nonzero;
    std::size_t samples = 0;
    bool more = true;
    while (more) {
      for (std::size_t j = 0; j < free_vars.size(); ++j)
        point[free_vars[j]] = Value(odo[j], steps);
      ++samples;
      Value v = u.eval(point);
      if (v.is_zero()) {
        if (!first_zero) first_zero = point;
      } else if (!first_nonzero) {
        first_nonzero = point;
      }
      if (first_zero && first_nonzero) {
        verdict.kind = ClassifierVerdict::Kind::Violates;
        verdict.witness_p = *first_zero;
        verdict.witness_q = *first_nonzero;
        return verdict;
      }
      // Advance the odometer (last free variable fastest).
      more = false;
      for (std::size_t j = free_vars.size(); j-- > 0;) {
        if (odo[j] < steps) { ++odo[j]; more = true; break; }
        odo[j] = 1;
      }
    }
    verdict.strata.push_back({mask,
                              first_zero ? StratumStatus::AllZero
                                         : StratumStatus::NoZero,
                              samples});
  }
  verdict.kind = ClassifierVerdict::Kind::Preserves;
  verdict.certified = false;
  return verdict;
}

/// Pointwise application of a connective to predicates on a shared carrier.
inline Predicate apply_connective(const ConnectiveExpr& u,
                                  const std::vector<Predicate>& args) {
  if (args.empty()) throw Error("apply_connective: no arguments");
  if (u.max_var() > args.size()) throw Error("apply_connective: arity mismatch");
  for (const auto& a : args)
    require_same_carrier(a.carrier(), args.front().carrier(), "apply_connective");
  return Predicate::tabulate(args.front().carrier(), [&](std::size_t i) {
    std::vector<Value> point;
    point.reserve(args.size());
    for (const auto& a : args) point.push_back(a.at(i));
    return u.eval(point);
  });
}

struct ViolationDemo {
  std::vector<Predicate> phi;        // constant at p
  std::vector<Predicate> phi_prime;  // constant at q
  bool inputs_pairwise_iso = false;
  bool outputs_iso = true;
};

/// Realises a violation pair as predicates: constants phi_i = p_i and
/// phi_i' = q_i on X are pairwise isomorphic (identical zero patterns),
/// yet u maps one family to truth and the other away from it.
inline ViolationDemo demonstrate_violation(const ConnectiveExpr& u,
                                           const std::vector<Value>& p,
                                           const std::vector<Value>& q,
                                           const Carrier& x) {
  if (p.size() != q.size() || p.empty())
    throw PreconditionError("demonstrate_violation: mismatched witness arity");
  if (u.max_var() > p.size())
    throw PreconditionError("demonstrate_violation: witness arity below connective arity");
  if (x.size() == 0)
    throw PreconditionError("demonstrate_violation: carrier must be nonempty");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i].is_zero() != q[i].is_zero())
      throw PreconditionError("demonstrate_violation: witnesses differ in zero pattern");
  if (!u.eval(p).is_zero() || u.eval(q).is_zero())
    throw PreconditionError("demonstrate_violation: not a violation pair");

  ViolationDemo demo;
  for (std::size_t i = 0; i < p.size(); ++i) {
    demo.phi.push_back(Predicate::constant(x, p[i]));
    demo.phi_prime.push_back(Predicate::constant(x, q[i]));
  }
  demo.inputs_pairwise_iso = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!predicates_iso(demo.phi[i], demo.phi_prime[i]))
      demo.inputs_pairwise_iso = false;
  demo.outputs_iso =
      predicates_iso(apply_connective(u, demo.phi), apply_connective(u, demo.phi_prime));
  return demo;
}

// ---------------------------------------------------------------------------
// Expression parser: min(e,e), max(e,e), 1-e, e1 -. e2, e1 +. e2, q*e,
// rational constants, variables x,y,z,x4,...

namespace detail {

class ConnParser {
public:
  explicit ConnParser(std::string_view text) : text_(text) {}

  ConnectiveExpr parse() {
    ConnectiveExpr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw Error("connective syntax error at column " + std::to_string(pos_ + 1));
    return e;
  }

private:
  ConnectiveExpr expr() {
    ConnectiveExpr lhs = primary();
    while (true) {
      skip_ws();
      if (eat("+.")) lhs = ConnectiveExpr::tadd(std::move(lhs), primary());
      else if (eat("-.")) lhs = ConnectiveExpr::tsub(std::move(lhs), primary());
      else return lhs;
    }
  }

  ConnectiveExpr primary() {
    skip_ws();
    if (eat("min(")) return call(&ConnectiveExpr::min_of);
    if (eat("max(")) return call(&ConnectiveExpr::max_of);
    if (eat("(")) {
      ConnectiveExpr e = expr();
      expect(")");
      return e;
    }
    if (pos_ < text_.size() && (std::isdigit((unsigned char)text_[pos_]))) {
      Rat q = number();
      skip_ws();
      if (eat("*")) return ConnectiveExpr::scale(Value(q), primary());
      if (starts_with("-") && !starts_with("-.")) {
        ++pos_;
        if (q != Rat(1, 1)) throw Error("only 1-e is a complement");
        return ConnectiveExpr::negate(primary());
      }
      return ConnectiveExpr::constant(Value(q));
    }
    return variable();
  }

  ConnectiveExpr call(ConnectiveExpr (*make)(ConnectiveExpr, ConnectiveExpr)) {
    ConnectiveExpr a = expr();
    expect(",");
    ConnectiveExpr b = expr();
    expect(")");
    return make(std::move(a), std::move(b));
  }

  ConnectiveExpr variable() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum((unsigned char)text_[pos_])) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return ConnectiveExpr::var(1);
    if (name == "y") return ConnectiveExpr::var(2);
    if (name == "z") return ConnectiveExpr::var(3);
    if (name.size() > 1 && name[0] == 'x') {
      std::size_t idx = 0;
      bool digits = true;
      for (char c : name.substr(1)) {
        if (!std::isdigit((unsigned char)c)) { digits = false; break; }
        idx = idx * 10 + (std::size_t)(c - '0');
      }
      if (digits && idx > 0) return ConnectiveExpr::var(idx);
    }
    throw Error("connective syntax error at column " + std::to_string(start + 1) +
                ": expected an expression");
  }

  Rat number() {
    long long num = integer();
    skip_ws();
    if (eat("/")) return Rat(num, integer());
    return Rat(num, 1);
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
    if (start == pos_)
      throw Error("connective syntax error at column " + std::to_string(pos_ + 1) +
                  ": expected a number");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }
  bool eat(std::string_view s) {
    skip_ws();
    if (starts_with(s)) { pos_ += s.size(); return true; }
    return false;
  }
  void expect(std::string_view s) {
    if (!eat(s))
      throw Error("connective syntax error at column " + std::to_string(pos_ + 1) +
                  ": expected '" + std::string(s) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline ConnectiveExpr ConnectiveExpr::parse(std::string_view text) {
  return detail::ConnParser(text).parse();
}

} // namespace culogic
