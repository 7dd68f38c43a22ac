#ifndef MVR_TERM_HPP
#define MVR_TERM_HPP

// MV-terms of Lukasiewicz logic: AST, parser and exact evaluation.
//
// Concrete syntax (ASCII):
//   ~t            negation
//   t (+) u       strong disjunction, min(1, t+u)
//   t (.) u       strong conjunction, max(0, t+u-1)
//   t (-) u       truncated difference, t (.) ~u
//   t /\ u        min
//   t \/ u        max
//   t -> u        ~t (+) u
//   t <-> u       (t -> u) (.) (u -> t)
//   x1, x2, ...   variables;  0, 1  constants
// Precedence from tightest: ~, {(.) (+) (-)}, /\, \/, ->, <->. All binary
// operators associate to the left. Derived connectives are desugared while
// parsing, so a Term only ever holds the core connectives.

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"

namespace mvr {

class Term {
 public:
  enum class Kind { Var, Zero, One, Neg, OPlus, OTimes, Meet, Join };

  static Term var(std::size_t index) {
    if (index == 0) throw ArityError("variable indices start at 1");
    return Term(Kind::Var, index, nullptr, nullptr);
  }
  static Term zero() { return Term(Kind::Zero, 0, nullptr, nullptr); }
  static Term one() { return Term(Kind::One, 0, nullptr, nullptr); }
  static Term neg(const Term& t) { return Term(Kind::Neg, 0, t.node_, nullptr); }
  static Term oplus(const Term& a, const Term& b) { return Term(Kind::OPlus, 0, a.node_, b.node_); }
  static Term otimes(const Term& a, const Term& b) { return Term(Kind::OTimes, 0, a.node_, b.node_); }
  static Term meet(const Term& a, const Term& b) { return Term(Kind::Meet, 0, a.node_, b.node_); }
  static Term join(const Term& a, const Term& b) { return Term(Kind::Join, 0, a.node_, b.node_); }
  static Term minus(const Term& a, const Term& b) { return otimes(a, neg(b)); }
  static Term implies(const Term& a, const Term& b) { return oplus(neg(a), b); }
  static Term iff(const Term& a, const Term& b) { return otimes(implies(a, b), implies(b, a)); }

  Kind kind() const { return node_->kind; }
  /// Variable index (1-based); only meaningful for Kind::Var.
  std::size_t index() const { return node_->index; }
  Term lhs() const { return Term(node_->lhs); }
  Term rhs() const { return Term(node_->rhs); }
  Term operand() const { return Term(node_->lhs); }
  bool is_binary() const { return node_->rhs != nullptr; }

  /// Identity of the shared node, usable as a memo key.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.node_->index != b.node_->index) return false;
    if (a.node_->lhs && !(a.lhs() == b.lhs())) return false;
    if (a.node_->rhs && !(a.rhs() == b.rhs())) return false;
    return true;
  }

 private:
  struct Node {
    Kind kind;
    std::size_t index;
    std::shared_ptr<const Node> lhs, rhs;
  };

  Term(Kind k, std::size_t i, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b)
      : node_(std::make_shared<const Node>(Node{k, i, std::move(a), std::move(b)})) {}
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Largest variable index used; 0 for closed terms.
inline std::size_t arity(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.index();
    case Term::Kind::Zero:
    case Term::Kind::One:
      return 0;
    case Term::Kind::Neg:
      return arity(t.operand());
    default:
      return std::max(arity(t.lhs()), arity(t.rhs()));
  }
}

inline Rational evaluate(const Term& t, const Point& p) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.index() > p.dim())
        throw ArityError("term uses x" + std::to_string(t.index()) + " but the point has dimension " +
                         std::to_string(p.dim()));
      return p[t.index() - 1];
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::One:
      return 1;
    case Term::Kind::Neg:
      return 1 - evaluate(t.operand(), p);
    case Term::Kind::OPlus: {
      Rational s = evaluate(t.lhs(), p) + evaluate(t.rhs(), p);
      return s < 1 ? s : Rational(1);
    }
    case Term::Kind::OTimes: {
      Rational s = evaluate(t.lhs(), p) + evaluate(t.rhs(), p) - 1;
      return s > 0 ? s : Rational(0);
    }
    case Term::Kind::Meet: {
      Rational a = evaluate(t.lhs(), p), b = evaluate(t.rhs(), p);
      return a < b ? a : b;
    }
    case Term::Kind::Join: {
      Rational a = evaluate(t.lhs(), p), b = evaluate(t.rhs(), p);
      return a < b ? b : a;
    }
  }
  return 0;
}

namespace detail {

inline int precedence(Term::Kind k) {
  switch (k) {
    case Term::Kind::Join:
      return 1;
    case Term::Kind::Meet:
      return 2;
    case Term::Kind::OPlus:
    case Term::Kind::OTimes:
      return 3;
    case Term::Kind::Neg:
      return 4;
    default:
      return 5;
  }
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = parse_iff();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected input '" + std::string(1, text_[pos_]) + "'", pos_);
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool peek(std::string_view tok) {
    skip_space();
    return text_.substr(pos_, tok.size()) == tok;
  }

  Term parse_iff() {
    Term t = parse_implies();
    while (accept("<->")) t = Term::iff(t, parse_implies());
    return t;
  }
  Term parse_implies() {
    Term t = parse_join();
    while (!peek("<->") && accept("->")) t = Term::implies(t, parse_join());
    return t;
  }
  Term parse_join() {
    Term t = parse_meet();
    while (accept("\\/")) t = Term::join(t, parse_meet());
    return t;
  }
  Term parse_meet() {
    Term t = parse_mul();
    while (accept("/\\")) t = Term::meet(t, parse_mul());
    return t;
  }
  Term parse_mul() {
    Term t = parse_unary();
    while (true) {
      if (accept("(+)"))
        t = Term::oplus(t, parse_unary());
      else if (accept("(.)"))
        t = Term::otimes(t, parse_unary());
      else if (accept("(-)"))
        t = Term::minus(t, parse_unary());
      else
        return t;
    }
  }
  Term parse_unary() {
    if (accept("~")) return Term::neg(parse_unary());
    return parse_atom();
  }
  Term parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of term", pos_);
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      if (peek("(+)") || peek("(.)") || peek("(-)")) throw ParseError("operator without left operand", pos_);
      ++pos_;
      Term t = parse_iff();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return t;
    }
    if (c == 'x') {
      ++pos_;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) throw ParseError("expected variable index", pos_);
      std::string idx(text_.substr(digits, pos_ - digits));
      if (idx.size() > 9) throw ParseError("variable index too large", start);
      std::size_t i = std::stoul(idx);
      if (i == 0) throw ParseError("variable index 0 is not allowed", start);
      return Term::var(i);
    }
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("constants are 0 or 1", start);
      return c == '0' ? Term::zero() : Term::one();
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

/// Prints in the concrete syntax with only the parentheses precedence needs.
inline std::string to_string(const Term& t) {
  using K = Term::Kind;
  auto wrap = [](const Term& child, int parent_prec, bool right) {
    std::string s = to_string(child);
    int p = detail::precedence(child.kind());
    if (p < parent_prec || (right && p == parent_prec && child.is_binary())) return "(" + s + ")";
    return s;
  };
  switch (t.kind()) {
    case K::Var:
      return "x" + std::to_string(t.index());
    case K::Zero:
      return "0";
    case K::One:
      return "1";
    case K::Neg:
      return "~" + wrap(t.operand(), detail::precedence(K::Neg), false);
    default:
      break;
  }
  const char* op = t.kind() == K::OPlus ? " (+) " : t.kind() == K::OTimes ? " (.) " : t.kind() == K::Meet ? " /\\ " : " \\/ ";
  int p = detail::precedence(t.kind());
  return wrap(t.lhs(), p, false) + op + wrap(t.rhs(), p, true);
}

}  // namespace mvr

#endif  // MVR_TERM_HPP
