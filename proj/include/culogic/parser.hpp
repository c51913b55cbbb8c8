#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "culogic/ast.hpp"

namespace culogic {

struct ParseError {
  SourcePos pos;
  std::string message;
};

struct ParseResult {
  Theory theory;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

// Theory files are line oriented: one declaration or sequent per line,
// '#' starts a comment. Parsing is total; a bad line is reported and
// skipped.
//
//   sort S
//   fun f : S * S -> S
//   fun c : -> S
//   rel R : S * S
//   [x:S, y:S] R(x,y) /\ top |- E z:S. R(x,z) \/ x = y
//   [x:S] R(x,x) -||- min(R(x,x), top)
//
// Keywords: sort fun rel top bot min max E A. The full grammar ships in
// docs/grammar.ebnf.

namespace detail {

class LineParser {
public:
  LineParser(std::string_view line, std::size_t lineno, const Signature& sig)
      : text_(line), line_(lineno), sig_(sig) {}

  SourcePos here() const { return {line_, pos_ + 1}; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '#') pos_ = text_.size();
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool peek(std::string_view s) {
    skip_ws();
    return text_.substr(pos_, s.size()) == s;
  }

  bool eat(std::string_view s) {
    if (!peek(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!eat(s)) fail("expected '" + std::string(s) + "'");
  }

  bool peek_ident() {
    skip_ws();
    return pos_ < text_.size() &&
           (std::isalpha((unsigned char)text_[pos_]) || text_[pos_] == '_');
  }

  /// Identifier or keyword.
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_' ||
            text_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]);
  }

  Rat rational() {
    long long num = integer();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      return Rat(num, integer());
    }
    return Rat(num, 1);
  }

  // --- declarations ---------------------------------------------------

  /// "sort"/"fun"/"rel" lines mutate the signature; anything else is a
  /// sequent.
  enum class LineKind { Empty, Declaration, Sequent };

  LineKind classify() {
    if (at_end()) return LineKind::Empty;
    std::size_t save = pos_;
    if (peek_ident()) {
      std::string word = ident();
      bool decl = word == "sort" || word == "fun" || word == "rel";
      pos_ = save;
      if (decl) return LineKind::Declaration;
    }
    return LineKind::Sequent;
  }

  void declaration(Signature& sig) {
    std::string word = ident();
    if (word == "sort") {
      sig.add_sort(ident());
    } else if (word == "fun") {
      std::string name = ident();
      expect(":");
      FunctionDecl d;
      if (!peek("->")) {
        d.args.push_back(ident());
        while (eat("*")) d.args.push_back(ident());
      }
      expect("->");
      d.result = ident();
      require_sorts(d.args);
      require_sort(d.result);
      sig.add_function(name, std::move(d));
    } else {
      std::string name = ident();
      expect(":");
      std::vector<std::string> args;
      if (!at_end()) {
        args.push_back(ident());
        while (eat("*")) args.push_back(ident());
      }
      require_sorts(args);
      sig.add_relation(name, std::move(args));
    }
    if (!at_end()) fail("trailing input after declaration");
  }

  // --- sequents ---------------------------------------------------------

  SequentAst sequent() {
    SequentAst s;
    s.pos = here();
    if (eat("[")) {
      if (!eat("]")) {
        do {
          ContextVar v;
          v.name = ident();
          expect(":");
          v.sort = ident();
          s.context.push_back(std::move(v));
        } while (eat(","));
        expect("]");
      }
    }
    s.lhs = formula();
    if (eat("-||-")) s.bidirectional = true;
    else expect("|-");
    s.rhs = formula();
    if (!at_end()) fail("trailing input after sequent");
    return s;
  }

  Formula formula() { return disjunction(); }

private:
  void require_sort(const std::string& s) {
    if (!sig_.has_sort(s)) fail("unknown sort '" + s + "'");
  }
  void require_sorts(const std::vector<std::string>& ss) {
    for (const auto& s : ss) require_sort(s);
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  static bool is_keyword(const std::string& w) {
    return w == "top" || w == "bot" || w == "min" || w == "max" || w == "E" ||
           w == "A" || w == "sort" || w == "fun" || w == "rel";
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (eat("\\/")) f = f_or(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = summand();
    while (eat("/\\")) f = f_and(std::move(f), summand());
    return f;
  }

  /// Truncated sum/difference of formulas: a connective-extension node.
  Formula summand() {
    Formula f = atom();
    while (true) {
      SourcePos p = here();
      if (eat("+."))
        f = f_conn(ConnectiveExpr::tadd(ConnectiveExpr::var(1), ConnectiveExpr::var(2)),
                   {std::move(f), atom()}, p);
      else if (eat("-."))
        f = f_conn(ConnectiveExpr::tsub(ConnectiveExpr::var(1), ConnectiveExpr::var(2)),
                   {std::move(f), atom()}, p);
      else
        return f;
    }
  }

  Formula atom() {
    skip_ws();
    SourcePos p = here();
    if (eat("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    if (peek_digit()) {
      Rat q = rational();
      if (eat("*"))
        return f_conn(ConnectiveExpr::scale(Value(q), ConnectiveExpr::var(1)),
                      {atom()}, p);
      if (peek("-") && !peek("-.") && !peek("-||-")) {
        expect("-");
        if (q != Rat(1, 1)) fail("only 1-e denotes a complement");
        return f_conn(ConnectiveExpr::negate(ConnectiveExpr::var(1)), {atom()}, p);
      }
      return f_conn(ConnectiveExpr::constant(Value(q)), {}, p);
    }
    if (!peek_ident()) fail("expected a formula");

    std::string word = ident();
    if (word == "top") return f_top();
    if (word == "bot") return f_bot();
    if (word == "min" || word == "max") {
      expect("(");
      Formula a = formula();
      expect(",");
      Formula b = formula();
      expect(")");
      auto u = word == "min"
                   ? ConnectiveExpr::min_of(ConnectiveExpr::var(1), ConnectiveExpr::var(2))
                   : ConnectiveExpr::max_of(ConnectiveExpr::var(1), ConnectiveExpr::var(2));
      return f_conn(u, {std::move(a), std::move(b)}, p);
    }
    if (word == "E" || word == "A") {
      std::string v = ident();
      expect(":");
      std::string sort = ident();
      require_sort(sort);
      expect(".");
      Formula body = formula();
      return word == "E" ? f_exists(v, sort, std::move(body))
                         : f_forall(v, sort, std::move(body));
    }

    // An identifier: a relation application, or the left side of an
    // equality (a term).
    Term t = term_tail(word, p);
    if (eat("=")) {
      Term rhs = term();
      return f_eq(std::move(t), std::move(rhs), p);
    }
    if (t.kind == Term::Kind::Var && sig_.relation(t.name) &&
        sig_.relation(t.name)->empty())
      return f_rel(t.name, {}, p);  // nullary relation written bare
    if (t.kind == Term::Kind::App && sig_.relation(t.name))
      return f_rel(t.name, std::move(t.args), p);
    if (sig_.relation(t.name))
      fail("relation '" + t.name + "' used with wrong shape");
    fail("unknown relation '" + t.name + "'");
  }

  Term term() {
    skip_ws();
    SourcePos p = here();
    std::string name = ident();
    if (is_keyword(name)) fail("'" + name + "' is a keyword");
    return term_tail(name, p);
  }

  Term term_tail(const std::string& name, SourcePos p) {
    if (eat("(")) {
      std::vector<Term> args;
      if (!peek(")")) {
        args.push_back(term());
        while (eat(",")) args.push_back(term());
      }
      expect(")");
      return Term::app(name, std::move(args), p);
    }
    return Term::var(name, p);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const Signature& sig_;
};

} // namespace detail

/// Parses a theory file. Never throws: all problems, including sort errors
/// in otherwise well-formed sequents, are collected as diagnostics. The
/// initial signature (typically the one declared by a model file) seeds
/// the symbol tables; the theory may declare further symbols.
inline ParseResult parse_theory(std::string_view text,
                                const Signature& initial = Signature{}) {
  ParseResult result;
  result.theory.signature = initial;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++lineno;

    detail::LineParser lp(line, lineno, result.theory.signature);
    try {
      switch (lp.classify()) {
        case detail::LineParser::LineKind::Empty:
          break;
        case detail::LineParser::LineKind::Declaration:
          lp.declaration(result.theory.signature);
          break;
        case detail::LineParser::LineKind::Sequent: {
          SequentAst s = lp.sequent();
          s.text = std::string(line);
          sort_check(result.theory.signature, s);
          result.theory.sequents.push_back(std::move(s));
          break;
        }
      }
    } catch (const Error& e) {
      result.errors.push_back({{lineno, 0}, e.what()});
    }

    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return result;
}

/// Parses a single sequent against a fixed signature; throws on error.
inline SequentAst parse_sequent(const Signature& sig, std::string_view line) {
  detail::LineParser lp(line, 1, sig);
  SequentAst s = lp.sequent();
  s.text = std::string(line);
  sort_check(sig, s);
  return s;
}

} // namespace culogic
