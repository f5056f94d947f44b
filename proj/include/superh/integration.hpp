#pragma once

// Integration on R^{m|2n}: Berezin integral, the Pizzetti supersphere
// integral, the radial morphism phi# with its inverse, classical sphere
// moments and the phi#-based supersphere formula.

#include <superh/harmonic.hpp>
#include <superh/text.hpp>

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace superh {

/// q * pi^(h/2). Zero is stored with h = 0.
class ScaledRational {
 public:
  ScaledRational() = default;
  ScaledRational(Rational q, int h) : q_(std::move(q)), h_(q_.is_zero() ? 0 : h) {}  // NOLINT

  [[nodiscard]] const Rational& q() const noexcept { return q_; }
  [[nodiscard]] int h() const noexcept { return h_; }
  [[nodiscard]] bool is_zero() const noexcept { return q_.is_zero(); }

  ScaledRational& operator+=(const ScaledRational& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (h_ != o.h_) throw std::domain_error("ScaledRational: adding different powers of pi");
    q_ += o.q_;
    if (q_.is_zero()) h_ = 0;
    return *this;
  }
  ScaledRational& operator-=(const ScaledRational& o) { return *this += -o; }
  ScaledRational operator-() const { return {-q_, h_}; }
  friend ScaledRational operator+(ScaledRational a, const ScaledRational& b) { return a += b; }
  friend ScaledRational operator-(ScaledRational a, const ScaledRational& b) { return a -= b; }
  friend ScaledRational operator*(const ScaledRational& a, const ScaledRational& b) {
    return {a.q_ * b.q_, a.h_ + b.h_};
  }
  friend ScaledRational operator*(const Rational& c, const ScaledRational& a) { return {c * a.q_, a.h_}; }
  friend bool operator==(const ScaledRational& a, const ScaledRational& b) { return a.q_ == b.q_ && a.h_ == b.h_; }

  /// "q * pi^e" with e = h/2 written as an integer or as "(h/2)"; zero is "0".
  [[nodiscard]] std::string str() const {
    if (is_zero()) return "0";
    const std::string e = h_ % 2 == 0 ? std::to_string(h_ / 2) : "(" + std::to_string(h_) + "/2)";
    return q_.str() + " * pi^" + e;
  }

 private:
  Rational q_;
  int h_ = 0;
};

/// 1/Gamma(t/2).
inline ScaledRational reciprocal_gamma(int t) {
  if (t <= 0 && t % 2 == 0) return {};
  if (t % 2 == 0) return {factorial(t / 2 - 1).inverse(), 0};
  if (t > 0) {
    // Gamma(t/2) = sqrt(pi) * prod_{j=1}^{(t-1)/2} (j - 1/2)
    Rational g(1);
    for (int j = 1; j <= (t - 1) / 2; ++j) g *= Rational(2 * j - 1, 2);
    return {g.inverse(), -1};
  }
  // 1/Gamma(a) = a / Gamma(a + 1)
  return Rational(t, 2) * reciprocal_gamma(t + 2);
}

/// Gamma(t/2) for t > 0.
inline ScaledRational gamma_half(int t) {
  if (t <= 0) throw std::domain_error("gamma_half: needs a positive argument");
  const ScaledRational r = reciprocal_gamma(t);
  return {r.q().inverse(), -r.h()};
}

/// a(a-1)...(a-j+1)/j!
inline Rational generalized_binomial(const Rational& a, int j) {
  Rational c(1);
  for (int i = 0; i < j; ++i) c *= a - Rational(i);
  return c / factorial(j);
}

/// Top Grassmann coefficient and its pi^{-n} prefactor.
struct BerezinResult {
  SuperPolynomial coefficient;  // bosonic
  ScaledRational prefactor;
};

/// pi^{-n} d_{xg_{2n}} ... d_{xg_1} f.
inline BerezinResult berezin(const SuperPolynomial& f, int n) {
  SuperPolynomial g = f;
  for (int j = 0; j < 2 * n && !g.is_zero(); ++j) g = partial_fermionic(g, j);
  return {g, ScaledRational(Rational(1), -2 * n)};
}

/// Integral over the unit sphere S^{m-1} of x^alpha.
inline ScaledRational sphere_moment(const std::vector<int>& alpha) {
  int total = 0;
  ScaledRational v(Rational(2), 0);
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("sphere_moment: negative exponent");
    if (a % 2 != 0) return {};
    v = v * gamma_half(a + 1);
    total += a + 1;
  }
  return v * reciprocal_gamma(total);
}

inline ScaledRational sphere_moment(const SuperMonomial& mo, int m) {
  if (mo.mask != 0) throw std::invalid_argument("sphere_moment: monomial is not bosonic");
  std::vector<int> alpha(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) alpha[static_cast<std::size_t>(i)] = mo.exps[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(m); i < mo.exps.size(); ++i)
    if (mo.exps[i] != 0) throw std::invalid_argument("sphere_moment: variable out of range");
  return sphere_moment(alpha);
}

/// Sum_k 2 pi^{M/2} / Gamma(k + M/2) * (nabla^{2k} f)(0) / (4^k k!).
inline ScaledRational pizzetti(const SuperPolynomial& f, int m, int n) {
  if (m < 1) throw std::invalid_argument("pizzetti: needs m >= 1");
  const int M = m - 2 * n;
  const auto lap = nabla2(m, n);
  ScaledRational total;
  SuperPolynomial g = f;
  Rational scale(2);
  for (int k = 0; !g.is_zero(); ++k) {
    const Rational c = g.constant_term();
    if (!c.is_zero()) total += ScaledRational(scale * c, M) * reciprocal_gamma(2 * k + M);
    g = lap(g);
    scale /= Rational(4 * (k + 1));
  }
  return total;
}

/// Sum_j N_j r^{-2j} with polynomial numerators; r is the bosonic radius.
class LaurentSuperFunction {
 public:
  LaurentSuperFunction() = default;
  LaurentSuperFunction(SuperPolynomial f) { add(0, std::move(f)); }  // NOLINT

  [[nodiscard]] const std::map<int, SuperPolynomial>& terms() const noexcept { return terms_; }

  void add(int j, SuperPolynomial f) {
    if (j < 0) throw std::invalid_argument("LaurentSuperFunction: negative power index");
    if (f.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(j, std::move(f));
    if (!fresh) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentSuperFunction& operator+=(const LaurentSuperFunction& o) {
    for (const auto& [j, f] : o.terms_) add(j, f);
    return *this;
  }
  friend LaurentSuperFunction operator+(LaurentSuperFunction a, const LaurentSuperFunction& b) { return a += b; }
  friend LaurentSuperFunction operator*(const LaurentSuperFunction& a, const LaurentSuperFunction& b) {
    LaurentSuperFunction out;
    for (const auto& [i, f] : a.terms_)
      for (const auto& [j, g] : b.terms_) out.add(i + j, f * g);
    return out;
  }
  friend LaurentSuperFunction operator*(const Rational& c, LaurentSuperFunction a) {
    if (c.is_zero()) return {};
    for (auto& [j, f] : a.terms_) f *= c;
    return a;
  }

  [[nodiscard]] int max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  /// N with this = N r^{-2J}, J >= max_power().
  [[nodiscard]] SuperPolynomial cleared(int m, int J) const {
    if (J < max_power()) throw std::invalid_argument("LaurentSuperFunction::cleared: J too small");
    const SuperPolynomial rr = r2_bosonic(m);
    SuperPolynomial out;
    for (const auto& [j, f] : terms_) out += f * pow(rr, J - j);
    return out;
  }

  /// Restriction to r = 1.
  [[nodiscard]] SuperPolynomial at_unit_radius() const {
    SuperPolynomial out;
    for (const auto& [j, f] : terms_) out += f;
    return out;
  }

 private:
  std::map<int, SuperPolynomial> terms_;
};

/// Equality as functions on R^m_0 x Lambda_{2n}.
inline bool equal_as_functions(const LaurentSuperFunction& a, const LaurentSuperFunction& b, int m) {
  const int J = std::max(a.max_power(), b.max_power());
  return a.cleared(m, J) == b.cleared(m, J);
}

/// d/d(r^2) = E_b / (2 r^2). A bosonic-degree-d numerator over r^{2j} has
/// bosonic homogeneity d - 2j.
inline LaurentSuperFunction d_r2(const LaurentSuperFunction& F) {
  LaurentSuperFunction out;
  for (const auto& [j, f] : F.terms()) {
    std::vector<SuperPolynomial::Term> terms;
    for (const auto& [mo, c] : f.terms()) {
      const int w = mo.bosonic_degree() - 2 * j;
      if (w != 0) terms.emplace_back(mo, c * Rational(w, 2));
    }
    out.add(j + 1, SuperPolynomial::from_terms(std::move(terms)));
  }
  return out;
}

namespace detail {

inline LaurentSuperFunction radial_series(const LaurentSuperFunction& F, int n, int sign) {
  const SuperPolynomial th = theta2(n);
  LaurentSuperFunction out;
  LaurentSuperFunction cur = F;
  SuperPolynomial th_j(1);
  for (int j = 0; j <= n; ++j) {
    Rational c = factorial(j).inverse();
    if (sign < 0 && j % 2 == 1) c = -c;
    out += c * (LaurentSuperFunction(th_j) * cur);
    cur = d_r2(cur);
    th_j *= th;
  }
  return out;
}

}  // namespace detail

/// phi#(f) = Sum_{j <= n} (-1)^j theta^{2j}/j! (d/dr^2)^j f.
inline LaurentSuperFunction phi_sharp(const LaurentSuperFunction& f, int m, int n) {
  if (m < 1) throw std::invalid_argument("phi_sharp: needs m >= 1");
  return detail::radial_series(f, n, -1);
}

/// Inverse of phi#: Sum_{j <= n} theta^{2j}/j! (d/dr^2)^j.
inline LaurentSuperFunction phi_sharp_inverse(const LaurentSuperFunction& F, int m, int n) {
  if (m < 1) throw std::invalid_argument("phi_sharp_inverse: needs m >= 1");
  return detail::radial_series(F, n, +1);
}

/// Truncated series Sum_j binom(a, j) (-theta^2)^j r^{-2j w}, w = 0 or 1.
inline LaurentSuperFunction theta_power_series(const Rational& a, int n, bool over_r2) {
  const SuperPolynomial mth = -theta2(n);
  LaurentSuperFunction out;
  SuperPolynomial p(1);
  for (int j = 0; j <= n; ++j) {
    out.add(over_r2 ? j : 0, p * generalized_binomial(a, j));
    p *= mth;
  }
  return out;
}

/// sqrt(1 - theta^2/r^2), the factor phi# puts on each x_j.
inline LaurentSuperFunction sqrt_radial_factor(int n) { return theta_power_series(Rational(1, 2), n, true); }

/// Integral over S^{m-1} and B of (1 - theta^2)^{m/2-1} phi#(f).
inline ScaledRational supersphere_integral_phi(const SuperPolynomial& f, int m, int n) {
  if (m < 1) throw std::invalid_argument("supersphere_integral_phi: needs m >= 1");
  const auto weight = theta_power_series(Rational(m - 2, 2), n, false);
  const SuperPolynomial on_sphere = (weight * phi_sharp(f, m, n)).at_unit_radius();
  const auto [coef, pre] = berezin(on_sphere, n);
  ScaledRational total;
  for (const auto& [mo, c] : coef.terms()) total += c * sphere_moment(mo, m);
  return total.is_zero() ? total : total * pre;
}

/// Pizzetti values memoized per monomial. Uses linearity and the fact that
/// only the k = deg/2 term survives on a homogeneous polynomial.
class PizzettiCache {
 public:
  PizzettiCache(int m, int n) : m_(m), n_(n), lap_(nabla2(m, n)) {
    if (m < 1) throw std::invalid_argument("PizzettiCache: needs m >= 1");
  }

  [[nodiscard]] ScaledRational operator()(const SuperMonomial& mo) {
    const int d = mo.degree();
    if (d % 2 != 0) return {};
    const int s = d / 2;
    const Rational v = iterated_laplacian(mo);
    if (v.is_zero()) return {};
    const Rational scale = Rational(2) / (pow4(s) * factorial(s));
    return ScaledRational(scale * v, m_ - 2 * n_) * reciprocal_gamma(2 * s + m_ - 2 * n_);
  }
  [[nodiscard]] ScaledRational operator()(const SuperPolynomial& f) {
    ScaledRational total;
    for (const auto& [mo, c] : f.terms()) {
      const auto v = (*this)(mo);
      if (!v.is_zero()) total += c * v;
    }
    return total;
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int n() const noexcept { return n_; }

 private:
  static Rational pow4(int s) {
    Rational r(1);
    for (int i = 0; i < s; ++i) r *= Rational(4);
    return r;
  }

  // (nabla^{deg} mo)(0) for even degree.
  Rational iterated_laplacian(const SuperMonomial& mo) {
    if (mo.is_one()) return Rational(1);
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(mo); it != memo_.end()) return it->second;
    }
    Rational v;
    const SuperPolynomial down = lap_(SuperPolynomial(mo));
    for (const auto& [t, c] : down.terms()) v += c * iterated_laplacian(t);
    std::lock_guard lock(mutex_);
    memo_.emplace(mo, v);
    return v;
  }

  int m_;
  int n_;
  LinearOperator lap_;
  std::mutex mutex_;
  std::unordered_map<SuperMonomial, Rational, MonomialHash> memo_;
};

/// Outcome of the osp-invariance and orthogonality checks.
struct InvarianceReport {
  bool pass = true;
  std::string failure;  // first failing case
  std::size_t generator_checks = 0;
  std::size_t radial_checks = 0;
  std::size_t orthogonality_checks = 0;
};

/// On P_k, k <= k_max: T(L_ij f) = 0, T(R^2 f) = T(f), T(h_k h_l) = 0 for k != l.
inline InvarianceReport invariance_suite(int m, int n, int k_max) {
  if (m < 1) throw std::invalid_argument("invariance_suite: needs m >= 1");
  PizzettiCache T(m, n);
  InvarianceReport rep;
  auto fail = [&](std::string msg) {
    if (rep.pass) rep.failure = std::move(msg);
    rep.pass = false;
  };
  const auto gens = osp_generators(m, n);
  const SuperPolynomial rr = r2(m, n);
  for (int k = 0; k <= k_max; ++k)
    for (const auto& mo : basis_of(m, n, k)) {
      const SuperPolynomial f(mo);
      for (const auto& g : gens) {
        ++rep.generator_checks;
        if (!T(g.op(f)).is_zero())
          fail("T(L_" + std::to_string(g.i) + "," + std::to_string(g.j) + " " + to_string(f) + ") != 0");
      }
      ++rep.radial_checks;
      if (!(T(rr * f) == T(f))) fail("T(R^2 " + to_string(f) + ") != T(" + to_string(f) + ")");
    }
  // Cross-degree orthogonality; odd total degree vanishes identically.
  std::vector<std::vector<SuperPolynomial>> H;
  for (int k = 0; k <= k_max; ++k) H.push_back(harmonic_basis(m, n, k).basis());
  for (int k = 0; k <= k_max; ++k)
    for (int l = k + 2; l <= k_max; l += 2)
      for (const auto& a : H[static_cast<std::size_t>(k)])
        for (const auto& b : H[static_cast<std::size_t>(l)]) {
          ++rep.orthogonality_checks;
          if (!T(a * b).is_zero()) fail("T(h_" + std::to_string(k) + " h_" + std::to_string(l) + ") != 0 for " + to_string(a));
        }
  return rep;
}

}  // namespace superh
