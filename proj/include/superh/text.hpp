#pragma once

// Text form of polynomials: "2*x1^2 - 1/2*xg1*xg2 + 3".
//
// Bosonic variables are x1, x2, ...; Grassmann variables xg1, xg2, ...
// The parser accepts + - * ^, parentheses, integer literals and division by
// a nonzero constant.

#include <superh/polynomial.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superh {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

inline std::string to_string(const SuperMonomial& mo) {
  std::string s;
  for (std::size_t i = 0; i < mo.exps.size(); ++i) {
    if (mo.exps[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(i + 1);
    if (mo.exps[i] > 1) s += "^" + std::to_string(mo.exps[i]);
  }
  for (int j = 0; j < kMaxFermionic; ++j) {
    if (!(mo.mask >> j & 1U)) continue;
    if (!s.empty()) s += '*';
    s += "xg" + std::to_string(j + 1);
  }
  return s.empty() ? "1" : s;
}

inline std::string to_string(const SuperPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [mo, c] : f.terms()) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        s += "-";
        a.negate();
      }
    } else {
      s += a.sign() < 0 ? " - " : " + ";
      if (a.sign() < 0) a.negate();
    }
    first = false;
    if (mo.is_one()) {
      s += a.str();
    } else if (a.is_one()) {
      s += to_string(mo);
    } else {
      s += a.str() + "*" + to_string(mo);
    }
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const SuperPolynomial& f) { return os << to_string(f); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, int m, int n) : s_(text), m_(m), n_(n) {}

  SuperPolynomial parse() {
    SuperPolynomial f = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return f;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int m_;
  int n_;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SuperPolynomial expr() {
    SuperPolynomial f = term();
    for (;;) {
      if (eat('+')) {
        f += term();
      } else if (eat('-')) {
        f -= term();
      } else {
        return f;
      }
    }
  }

  SuperPolynomial term() {
    SuperPolynomial f = unary();
    for (;;) {
      if (eat('*')) {
        f = f * unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        SuperPolynomial d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (d.degree() != 0) throw ParseError("division only by a constant", at);
        f *= d.constant_term().inverse();
      } else {
        return f;
      }
    }
  }

  SuperPolynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  SuperPolynomial power() {
    SuperPolynomial base = primary();
    if (eat('^')) {
      skip();
      const std::size_t at = pos_;
      const std::string digits = integer_digits();
      if (digits.empty()) throw ParseError("expected exponent", at);
      if (digits.size() > 4) throw ParseError("exponent too large", at);
      base = pow(base, std::stoi(digits));
    }
    return base;
  }

  std::string integer_digits() {
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
    return d;
  }

  SuperPolynomial primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const std::size_t at = pos_;
    if (eat('(')) {
      SuperPolynomial f = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return SuperPolynomial(Rational::parse(integer_digits()));
    if (c == 'x') {
      ++pos_;
      bool grass = false;
      if (pos_ < s_.size() && s_[pos_] == 'g') {
        grass = true;
        ++pos_;
      }
      const std::string digits = integer_digits();
      if (digits.empty() || digits.size() > 3) throw ParseError("bad variable name", at);
      const int idx = std::stoi(digits);
      if (grass) {
        if (idx < 1 || idx > 2 * n_) throw ParseError("Grassmann variable xg" + digits + " not in ring", at);
        return SuperPolynomial::xg(idx - 1);
      }
      if (idx < 1 || idx > m_) throw ParseError("variable x" + digits + " not in ring", at);
      return SuperPolynomial::x(idx - 1);
    }
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }
};

}  // namespace detail

/// Parses a polynomial in the ring with m bosonic and 2n Grassmann variables.
inline SuperPolynomial parse_polynomial(std::string_view text, int m, int n) {
  return detail::PolyParser(text, m, n).parse();
}

}  // namespace superh
