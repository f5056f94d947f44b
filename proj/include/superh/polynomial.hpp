#pragma once

#include <superh/monomial.hpp>
#include <superh/rational.hpp>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superh {

/// Sparse element of R[x_1..x_m] (x) Lambda_{2n} with exact coefficients.
///
/// Terms are kept sorted by monomial_less with no zero coefficients, so two
/// polynomials are equal iff their term vectors are equal.
class SuperPolynomial {
 public:
  using Term = std::pair<SuperMonomial, Rational>;

  SuperPolynomial() = default;
  SuperPolynomial(Rational c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace_back(SuperMonomial{}, std::move(c));
  }
  SuperPolynomial(int c) : SuperPolynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  SuperPolynomial(const SuperMonomial& mo, Rational c = Rational(1)) {
    if (!c.is_zero()) terms_.emplace_back(mo, std::move(c));
  }

  /// Builds from arbitrary terms (duplicates summed, zeros dropped).
  static SuperPolynomial from_terms(std::vector<Term> terms) {
    SuperPolynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  /// x_{i+1} (0-based index).
  static SuperPolynomial x(int i) { return SuperPolynomial(SuperMonomial::bosonic(i)); }
  /// xg_{j+1} (0-based index).
  static SuperPolynomial xg(int j) { return SuperPolynomial(SuperMonomial::fermionic(j)); }

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

  [[nodiscard]] Rational coefficient(const SuperMonomial& mo) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mo,
                               [](const Term& t, const SuperMonomial& k) { return monomial_less(t.first, k); });
    if (it != terms_.end() && it->first == mo) return it->second;
    return Rational(0);
  }

  /// Highest total degree present, -1 for zero.
  [[nodiscard]] int degree() const noexcept { return terms_.empty() ? -1 : terms_.back().first.degree(); }

  /// 0 or 1 when all terms share a parity, -1 for mixed; zero counts as even.
  [[nodiscard]] int parity() const noexcept {
    if (terms_.empty()) return 0;
    const int p = terms_.front().first.parity();
    for (const auto& t : terms_)
      if (t.first.parity() != p) return -1;
    return p;
  }

  /// Constant term (value at the origin).
  [[nodiscard]] Rational constant_term() const {
    if (!terms_.empty() && terms_.front().first.is_one()) return terms_.front().second;
    return Rational(0);
  }

  SuperPolynomial& operator+=(const SuperPolynomial& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
      terms_ = o.terms_;
      return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      if (monomial_less(a->first, b->first)) {
        out.push_back(std::move(*a++));
      } else if (monomial_less(b->first, a->first)) {
        out.push_back(*b++);
      } else {
        Rational c = std::move(a->second);
        c += b->second;
        if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
    for (; b != o.terms_.end(); ++b) out.push_back(*b);
    terms_ = std::move(out);
    return *this;
  }
  SuperPolynomial& operator-=(const SuperPolynomial& o) { return *this += -o; }
  SuperPolynomial& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }
  SuperPolynomial& operator*=(const SuperPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  SuperPolynomial operator-() const {
    SuperPolynomial r(*this);
    for (auto& t : r.terms_) t.second.negate();
    return r;
  }

  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator*(SuperPolynomial a, const Rational& c) { return a *= c; }
  friend SuperPolynomial operator*(const Rational& c, SuperPolynomial a) { return a *= c; }

  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    SuperMonomial mo;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const int s = multiply_monomials(ma, mb, mo);
        if (s == 0) continue;
        Rational c = ca * cb;
        if (s < 0) c.negate();
        out.emplace_back(mo, std::move(c));
      }
    }
    SuperPolynomial p;
    p.terms_ = std::move(out);
    p.normalize();
    return p;
  }

  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }

 private:
  std::vector<Term> terms_;

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& l, const Term& r) { return monomial_less(l.first, r.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }
};

inline SuperPolynomial pow(const SuperPolynomial& f, int e) {
  if (e < 0) throw std::invalid_argument("pow: negative exponent");
  SuperPolynomial r(1);
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

/// Left derivative with respect to x_{i+1}.
inline SuperPolynomial partial_bosonic(const SuperPolynomial& f, int i) {
  if (i < 0 || i >= kMaxBosonic) throw std::out_of_range("partial: bosonic index out of range");
  std::vector<SuperPolynomial::Term> out;
  for (const auto& [mo, c] : f.terms()) {
    const int e = mo.exps[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    SuperMonomial d = mo;
    d.exps[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e - 1);
    out.emplace_back(d, c * Rational(e));
  }
  return SuperPolynomial::from_terms(std::move(out));
}

/// Left derivative with respect to xg_{j+1}: move the generator to the front
/// (one sign per generator passed) and delete it.
inline SuperPolynomial partial_fermionic(const SuperPolynomial& f, int j) {
  if (j < 0 || j >= kMaxFermionic) throw std::out_of_range("partial: fermionic index out of range");
  const std::uint64_t bit = std::uint64_t{1} << j;
  std::vector<SuperPolynomial::Term> out;
  for (const auto& [mo, c] : f.terms()) {
    if (!(mo.mask & bit)) continue;
    SuperMonomial d = mo;
    d.mask &= ~bit;
    const bool odd = std::popcount(mo.mask & (bit - 1)) & 1;
    out.emplace_back(d, odd ? -c : c);
  }
  return SuperPolynomial::from_terms(std::move(out));
}

/// Identifies one of the m + 2n generators.
struct Variable {
  bool fermionic = false;
  int index = 0;  // 0-based within its kind

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Generator X_{a+1} of the supervector, a in [0, m+2n): bosonic first.
inline Variable supervector_component(int m, int n, int a) {
  if (a < 0 || a >= m + 2 * n) throw std::out_of_range("supervector index out of range");
  return a < m ? Variable{false, a} : Variable{true, a - m};
}

inline SuperPolynomial variable_poly(const Variable& v) {
  return v.fermionic ? SuperPolynomial::xg(v.index) : SuperPolynomial::x(v.index);
}

inline SuperPolynomial partial(const SuperPolynomial& f, const Variable& v) {
  return v.fermionic ? partial_fermionic(f, v.index) : partial_bosonic(f, v.index);
}

/// Checked variant: the variable must belong to R^{m|2n}.
inline SuperPolynomial partial(const SuperPolynomial& f, const Variable& v, int m, int n) {
  if (v.index < 0 || v.index >= (v.fermionic ? 2 * n : m)) throw std::out_of_range("partial: variable not in the ring");
  return partial(f, v);
}

inline SuperPolynomial homogeneous_component(const SuperPolynomial& f, int k) {
  if (k < 0) throw std::invalid_argument("homogeneous_component: negative degree");
  std::vector<SuperPolynomial::Term> out;
  for (const auto& t : f.terms())
    if (t.first.degree() == k) out.push_back(t);
  return SuperPolynomial::from_terms(std::move(out));
}

}  // namespace superh
