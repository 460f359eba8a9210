#ifndef KFORGE_TEXT_HPP
#define KFORGE_TEXT_HPP

#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "kforge/poly.hpp"

namespace kforge {

/// Maps a 1-based variable index to its printed name.
using VarNamer = std::function<std::string(std::size_t)>;

inline VarNamer x_names() {
  return [](std::size_t j) { return "x" + std::to_string(j); };
}

/// Names x1..x_split for the first block and y1.. for the rest.
inline VarNamer xy_names(std::size_t split) {
  return [split](std::size_t j) {
    return j <= split ? "x" + std::to_string(j) : "y" + std::to_string(j - split);
  };
}

namespace detail {

class PolyParser {
public:
  PolyParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Poly parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

private:
  // expr := ['+'|'-'] term (('+'|'-') term)*
  Poly expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Poly t = term();
      if (c == '+') acc += t; else acc -= t;
    }
    return acc;
  }

  // term := factor ('*' factor)*
  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  // factor := base ('^' nonneg-int)?
  Poly factor() {
    Poly b = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (peek() == '-') throw ParseError("negative exponent", pos_);
      std::size_t at = pos_;
      Integer e = digits("exponent");
      if (e > 1000000) throw ParseError("exponent too large", at);
      b = pow(b, static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  // base := rational | var | '(' expr ')'
  Poly base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected variable index after 'x'", pos_);
      Integer idx = digits("variable index");
      if (idx < 1 || idx > n_)
        throw ParseError("variable x" + idx.get_str() + " outside x1..x" + std::to_string(n_), at);
      return Poly::variable(n_, idx.get_ui());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits("integer");
      Integer den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        den = digits("denominator");
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      return Poly::constant(n_, q);
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Integer digits(const char* what) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(std::string("expected ") + what, start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the polynomial grammar over variables x1..xn.
inline Poly parse_poly(std::string_view text, std::size_t n) {
  if (n == 0) throw ArityError("parse_poly: ambient dimension must be positive");
  return detail::PolyParser(text, n).parse();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Prints in descending graded-lex order, e.g. "x1^2 - 2/3*x1*x2 + 1".
inline std::string to_string(const Poly& p, const VarNamer& name = x_names()) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = m.is_one();
    if (constant || mag != 1) {
      out << mag.get_str();
      if (!constant) out << '*';
    }
    bool first_var = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_var) out << '*';
      first_var = false;
      out << name(i + 1);
      if (m[i] > 1) out << '^' << m[i];
    }
  }
  return out.str();
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

} // namespace kforge

#endif // KFORGE_TEXT_HPP
