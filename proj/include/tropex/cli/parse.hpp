#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "../error.hpp"
#include "../polytope.hpp"
#include "../rational.hpp"
#include "../semiring.hpp"
#include "../troppoly.hpp"

namespace tropex::cli {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::Syntax, what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

class Scanner {
 public:
  explicit Scanner(std::string text) : text_(std::move(text)) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  // Next character without skipping whitespace.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  [[noreturn]] void error(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw SyntaxError(msg + ", found " + found, line, col);
  }

  std::string digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected a digit");
    return text_.substr(start, pos_ - start);
  }

  Integer integer() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Integer z(digits());
    return neg ? Integer(-z) : z;
  }

  std::size_t natural() {
    std::string d = digits();
    if (d.size() > 9) error("index too large");
    return static_cast<std::size_t>(std::stoul(d));
  }

  // int ["/" nat]
  Rational rational() {
    Integer num = integer();
    Integer den = 1;
    if (accept('/')) {
      den = Integer(digits());
      if (den == 0) error("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
};

// A term before merging: coefficient, offset and sparse exponents (variable index from 1).
struct RawTerm {
  GaussianRational c;
  Rational a;
  std::vector<std::pair<std::size_t, Integer>> powers;
};

inline GaussianRational parse_coeff(Scanner& s) {
  if (s.accept('(')) {
    Rational re = s.rational();
    Rational im = 0;
    if (s.peek() == '+' || s.peek() == '-') {
      bool neg = s.peek() == '-';
      s.accept(s.peek());
      if (s.peek() == '+' || s.peek() == '-') s.error("expected an unsigned rational");
      im = s.rational();
      if (neg) im = -im;
      s.expect('i');
    } else if (s.accept('i')) {
      std::swap(re, im);
    }
    s.expect(')');
    return {re, im};
  }
  return GaussianRational(s.rational());
}

inline RawTerm parse_term(Scanner& s, bool negate) {
  RawTerm t{GaussianRational(1), Rational(0), {}};
  bool any = false;
  if (s.peek() == '(' || std::isdigit(static_cast<unsigned char>(s.peek()))) {
    t.c = parse_coeff(s);
    any = true;
  }
  if (s.peek() == 't') {
    s.accept('t');
    s.expect('^');
    if (s.accept('{')) {
      t.a = s.rational();
      s.expect('}');
    } else {
      t.a = s.rational();
    }
    any = true;
  }
  while (s.peek() == 'z') {
    s.accept('z');
    if (!std::isdigit(static_cast<unsigned char>(s.peek_raw()))) s.error("expected a variable index after 'z'");
    std::size_t i = s.natural();
    if (i == 0) s.error("variables are numbered from 1");
    Integer e = 1;
    if (s.accept('^')) {
      if (s.accept('{')) {
        e = s.integer();
        s.expect('}');
      } else {
        e = s.integer();
      }
    }
    t.powers.emplace_back(i, e);
    any = true;
  }
  if (!any) s.error("expected a term");
  if (negate) t.c = -t.c;
  return t;
}

inline std::vector<RawTerm> parse_raw(const std::string& text) {
  Scanner s(text);
  std::vector<RawTerm> out;
  bool negate = false;
  if (s.accept('-'))
    negate = true;
  else
    s.accept('+');
  out.push_back(parse_term(s, negate));
  while (!s.at_end()) {
    char c = s.peek();
    if (c != '+' && c != '-') s.error("expected '+' or '-'");
    s.accept(c);
    out.push_back(parse_term(s, c == '-'));
  }
  return out;
}

}  // namespace detail

// Terms in the order written, each with m exponents. m defaults to the largest variable index.
inline std::vector<Term> parse_terms(const std::string& text, std::optional<std::size_t> m = std::nullopt) {
  auto raw = detail::parse_raw(text);
  std::size_t vars = 0;
  for (const auto& t : raw)
    for (const auto& [i, e] : t.powers) vars = std::max(vars, i);
  if (m) {
    if (vars > *m)
      fail(ErrorCode::DimensionMismatch,
           "variable z" + std::to_string(vars) + " used but only " + std::to_string(*m) + " variables expected");
    vars = *m;
  }
  std::vector<Term> out;
  for (const auto& t : raw) {
    IntVector alpha(vars, Integer(0));
    for (const auto& [i, e] : t.powers) alpha[i - 1] += e;
    out.push_back({t.c, t.a, alpha});
  }
  return out;
}

inline ExplodedPolynomial parse_polynomial(const std::string& text, std::optional<std::size_t> m = std::nullopt) {
  auto terms = parse_terms(text, m);
  std::size_t vars = terms.empty() ? 0 : terms[0].alpha.size();
  return {vars, terms};
}

inline std::string print_term(const Term& t) {
  std::string out;
  bool unit = t.c == GaussianRational(1) || t.c == GaussianRational(-1);
  std::string mono;
  if (t.a != 0) mono += "t^" + to_string(t.a);
  for (std::size_t i = 0; i < t.alpha.size(); ++i) {
    if (t.alpha[i] == 0) continue;
    if (!mono.empty()) mono += " ";
    mono += "z" + std::to_string(i + 1);
    if (t.alpha[i] != 1) mono += "^" + to_string(t.alpha[i]);
  }
  if (t.c.is_real()) {
    Rational r = abs(t.c.re);
    if (!(unit && !mono.empty())) out = to_string(r);
  } else {
    Rational im = abs(t.c.im);
    out = "(" + to_string(t.c.re) + (t.c.im < 0 ? "-" : "+") + to_string(im) + "i)";
  }
  if (!mono.empty()) out += (out.empty() ? "" : " ") + mono;
  return out;
}

// Canonical text: terms in stored order, real negative coefficients shown with '-'.
inline std::string print_polynomial(const ExplodedPolynomial& f) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Term& t = f.terms()[i];
    bool neg = t.c.is_real() && t.c.re < 0;
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += print_term(t);
  }
  return out;
}

// "z1=<coeff>t^<rat>,z2=..." with every coordinate given once.
inline std::vector<ExplodedValue> parse_point(const std::string& text, std::size_t m) {
  detail::Scanner s(text);
  std::vector<std::optional<ExplodedValue>> coords(m);
  do {
    s.expect('z');
    std::size_t i = s.natural();
    if (i == 0 || i > m) s.error("coordinate index out of range");
    if (coords[i - 1]) s.error("coordinate z" + std::to_string(i) + " given twice");
    s.expect('=');
    bool negate = s.peek() == '-';
    if (!s.accept('-')) s.accept('+');
    GaussianRational c(1);
    if (s.peek() == '(' || std::isdigit(static_cast<unsigned char>(s.peek()))) c = detail::parse_coeff(s);
    if (negate) c = -c;
    Rational x = 0;
    if (s.accept('t')) {
      s.expect('^');
      if (s.accept('{')) {
        x = s.rational();
        s.expect('}');
      } else {
        x = s.rational();
      }
    }
    coords[i - 1] = ExplodedValue(c, x);
  } while (s.accept(','));
  if (!s.at_end()) s.error("expected ','");
  std::vector<ExplodedValue> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (!coords[i]) fail(ErrorCode::Syntax, "point is missing coordinate z" + std::to_string(i + 1));
    out.push_back(*coords[i]);
  }
  return out;
}

// Linear inequality such as "x1 + 2x2 >= 0", "x1 <= 1" or "x2 > -1/2", as a + alpha · x >= 0 (> 0 when strict).
inline Constraint parse_constraint(const std::string& text, std::size_t dim) {
  detail::Scanner s(text);
  auto side = [&](RatVector& coef, Rational& constant) {
    bool first = true;
    while (true) {
      char c = s.peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        s.accept(c);
      } else if (!first) {
        break;
      }
      first = false;
      Rational k = 1;
      bool hasNumber = false;
      if (std::isdigit(static_cast<unsigned char>(s.peek()))) {
        k = s.rational();
        hasNumber = true;
      }
      s.accept('*');
      if (s.accept('x')) {
        std::size_t i = s.natural();
        if (i == 0 || i > dim) s.error("coordinate index out of range");
        coef[i - 1] += neg ? Rational(-k) : k;
      } else {
        if (!hasNumber) s.error("expected a number or a coordinate");
        constant += neg ? Rational(-k) : k;
      }
    }
  };
  RatVector lhs(dim, Rational(0)), rhs(dim, Rational(0));
  Rational lc = 0, rc = 0;
  side(lhs, lc);
  bool ge;
  bool strict = false;
  if (s.accept('>')) {
    ge = true;
    strict = !s.accept('=');
  } else if (s.accept('<')) {
    ge = false;
    strict = !s.accept('=');
  } else {
    s.error("expected a comparison");
  }
  side(rhs, rc);
  if (!s.at_end()) s.error("unexpected text after the inequality");
  RatVector alpha(dim);
  Rational a = ge ? Rational(lc - rc) : Rational(rc - lc);
  for (std::size_t i = 0; i < dim; ++i) alpha[i] = ge ? Rational(lhs[i] - rhs[i]) : Rational(rhs[i] - lhs[i]);
  Integer den = 1;
  for (const auto& x : alpha) den = lcm(den, x.get_den());
  IntVector ia(dim);
  for (std::size_t i = 0; i < dim; ++i) ia[i] = Integer(alpha[i] * den);
  return {a * den, ia, strict};
}

}  // namespace tropex::cli
