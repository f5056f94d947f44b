#pragma once

// The orthosymplectic metric on R^{m|2n} and the differential operators built
// from it: R^2, the super Laplacian, Euler operators, the osp(m|2n)
// generators L_ij and the Laplace-Beltrami operators.

#include <superh/linear_operator.hpp>

#include <string>
#include <vector>

namespace superh {

/// Superdimension data for R^{m|2n}.
struct SuperDimension {
  int m = 0;
  int n = 0;

  [[nodiscard]] int M() const noexcept { return m - 2 * n; }
  [[nodiscard]] int size() const noexcept { return m + 2 * n; }
  /// M in {0, -2, -4, ...}.
  [[nodiscard]] bool in_minus_2N() const noexcept { return M() <= 0 && M() % 2 == 0; }
};

inline bool in_minus_2N(int M) noexcept { return M <= 0 && M % 2 == 0; }

/// g = diag(I_m, J_{2n}), J = 1/2 [[0,-1],[1,0]] per Grassmann pair, and its inverse.
class Metric {
 public:
  Metric(int m, int n) : m_(m), n_(n) {
    if (m < 0 || n < 0) throw std::invalid_argument("Metric: negative dimension");
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int size() const noexcept { return m_ + 2 * n_; }

  /// Grading [a] of supervector index a (0-based).
  [[nodiscard]] int grade(int a) const noexcept { return a >= m_ ? 1 : 0; }

  /// Entry g_{ab} (0-based).
  [[nodiscard]] Rational g(int a, int b) const {
    check(a);
    check(b);
    if (a < m_ || b < m_) return a == b ? Rational(1) : Rational(0);
    const int pa = (a - m_) / 2;
    const int pb = (b - m_) / 2;
    if (pa != pb || a == b) return Rational(0);
    return (a - m_) % 2 == 0 ? Rational(-1, 2) : Rational(1, 2);
  }
  /// Entry of g^{-1}.
  [[nodiscard]] Rational g_inv(int a, int b) const {
    check(a);
    check(b);
    if (a < m_ || b < m_) return a == b ? Rational(1) : Rational(0);
    const int pa = (a - m_) / 2;
    const int pb = (b - m_) / 2;
    if (pa != pb || a == b) return Rational(0);
    return (a - m_) % 2 == 0 ? Rational(2) : Rational(-2);
  }
  /// The unique b with g_{ab} != 0.
  [[nodiscard]] int partner(int a) const {
    check(a);
    if (a < m_) return a;
    return (a - m_) % 2 == 0 ? a + 1 : a - 1;
  }

  /// X_a as a polynomial.
  [[nodiscard]] SuperPolynomial X(int a) const { return variable_poly(supervector_component(m_, n_, a)); }
  /// X^a = sum_i X_i g_{ia}.
  [[nodiscard]] SuperPolynomial X_upper(int a) const {
    SuperPolynomial s;
    for (int i = 0; i < size(); ++i) {
      const Rational c = g(i, a);
      if (!c.is_zero()) s += X(i) * c;
    }
    return s;
  }
  /// d/dX_a.
  [[nodiscard]] LinearOperator d_lower(int a) const {
    return LinearOperator::differentiate(supervector_component(m_, n_, a));
  }
  /// nabla_a = d/dX^a = sum_i (g^{-1})_{ai} d/dX_i.
  [[nodiscard]] LinearOperator d_upper(int a) const {
    std::vector<LinearOperator> t;
    for (int i = 0; i < size(); ++i) {
      const Rational c = g_inv(a, i);
      if (!c.is_zero()) t.push_back(c * d_lower(i));
    }
    return LinearOperator::sum(t);
  }
  /// nabla^a = sum_i nabla_i g_{ia}.
  [[nodiscard]] LinearOperator nabla_upper(int a) const {
    std::vector<LinearOperator> t;
    for (int i = 0; i < size(); ++i) {
      const Rational c = g(i, a);
      if (!c.is_zero()) t.push_back(c * d_upper(i));
    }
    return LinearOperator::sum(t);
  }

 private:
  int m_;
  int n_;

  void check(int a) const {
    if (a < 0 || a >= size()) throw std::out_of_range("Metric: index out of range");
  }
};

/// R^2 = sum_i x_i^2 - sum_j xg_{2j-1} xg_{2j}.
inline SuperPolynomial r2(int m, int n) {
  SuperPolynomial s;
  for (int i = 0; i < m; ++i) s += SuperPolynomial(SuperMonomial::bosonic(i, 2));
  for (int j = 0; j < n; ++j) s -= SuperPolynomial::xg(2 * j) * SuperPolynomial::xg(2 * j + 1);
  return s;
}

/// R^2 = sum_j X^j X_j, through the metric.
inline SuperPolynomial r2_from_metric(int m, int n) {
  const Metric g(m, n);
  SuperPolynomial s;
  for (int a = 0; a < g.size(); ++a) s += g.X_upper(a) * g.X(a);
  return s;
}

/// r^2, the bosonic part of R^2.
inline SuperPolynomial r2_bosonic(int m) { return r2(m, 0); }

/// theta^2 = -sum_j xg_{2j-1} xg_{2j}.
inline SuperPolynomial theta2(int n) { return r2(0, n); }

/// Bosonic Laplacian sum_i d^2/dx_i^2.
inline LinearOperator nabla2_bosonic(int m) {
  std::vector<LinearOperator> t;
  for (int i = 0; i < m; ++i) {
    const auto d = LinearOperator::differentiate({false, i});
    t.push_back(d * d);
  }
  return LinearOperator::sum(t);
}

/// Fermionic Laplacian -4 sum_j d/dxg_{2j-1} d/dxg_{2j}.
inline LinearOperator nabla2_fermionic(int n) {
  std::vector<LinearOperator> t;
  for (int j = 0; j < n; ++j)
    t.push_back(Rational(-4) * LinearOperator::differentiate({true, 2 * j}) *
                LinearOperator::differentiate({true, 2 * j + 1}));
  return LinearOperator::sum(t);
}

/// Super Laplacian in explicit form.
inline LinearOperator nabla2(int m, int n) { return nabla2_bosonic(m) + nabla2_fermionic(n); }

/// Super Laplacian as sum_j nabla^j nabla_j through the metric.
inline LinearOperator nabla2_from_metric(int m, int n) {
  const Metric g(m, n);
  std::vector<LinearOperator> t;
  for (int a = 0; a < g.size(); ++a) t.push_back(g.nabla_upper(a) * g.d_upper(a));
  return LinearOperator::sum(t);
}

inline LinearOperator euler_bosonic(int m) {
  std::vector<LinearOperator> t;
  for (int i = 0; i < m; ++i)
    t.push_back(LinearOperator::multiply_by(SuperPolynomial::x(i)) * LinearOperator::differentiate({false, i}));
  return LinearOperator::sum(t);
}
inline LinearOperator euler_fermionic(int n) {
  std::vector<LinearOperator> t;
  for (int j = 0; j < 2 * n; ++j)
    t.push_back(LinearOperator::multiply_by(SuperPolynomial::xg(j)) * LinearOperator::differentiate({true, j}));
  return LinearOperator::sum(t);
}
inline LinearOperator euler(int m, int n) { return euler_bosonic(m) + euler_fermionic(n); }

/// L_ab = X_a d/dX^b - (-1)^{[a][b]} X_b d/dX^a, for any 0-based a, b.
inline LinearOperator osp_generator_0(const Metric& g, int a, int b) {
  const Rational sign = (g.grade(a) && g.grade(b)) ? Rational(-1) : Rational(1);
  return LinearOperator::multiply_by(g.X(a)) * g.d_upper(b) -
         sign * (LinearOperator::multiply_by(g.X(b)) * g.d_upper(a));
}

/// L_ij with 1-based indices 1 <= i <= j <= m+2n.
inline LinearOperator osp_generator(int i, int j, int m, int n) {
  const Metric g(m, n);
  if (i < 1 || j < i || j > g.size()) throw std::out_of_range("osp_generator: need 1 <= i <= j <= m+2n");
  return osp_generator_0(g, i - 1, j - 1);
}

/// A generator together with its 1-based labels and parity.
struct OspGenerator {
  int i = 0;
  int j = 0;
  int parity = 0;
  LinearOperator op;
};

/// All L_ij, i <= j, skipping the identically zero bosonic diagonal.
inline std::vector<OspGenerator> osp_generators(int m, int n) {
  const Metric g(m, n);
  std::vector<OspGenerator> out;
  for (int a = 0; a < g.size(); ++a)
    for (int b = a; b < g.size(); ++b) {
      if (a == b && a < m) continue;
      out.push_back({a + 1, b + 1, (g.grade(a) + g.grade(b)) % 2, osp_generator_0(g, a, b)});
    }
  return out;
}

/// R^2 nabla^2 - E(M - 2 + E).
inline LinearOperator laplace_beltrami(int m, int n) {
  const int M = m - 2 * n;
  const auto E = euler(m, n);
  return LinearOperator::multiply_by(r2(m, n)) * nabla2(m, n) - E * (LinearOperator::scale(Rational(M - 2)) + E);
}

/// -1/2 sum_{ijkl} L_ij g^{il} g^{jk} L_kl.
inline LinearOperator laplace_beltrami_from_generators(int m, int n) {
  const Metric g(m, n);
  std::vector<LinearOperator> t;
  for (int i = 0; i < g.size(); ++i) {
    const int l = g.partner(i);
    for (int j = 0; j < g.size(); ++j) {
      const int k = g.partner(j);
      const Rational c = Rational(-1, 2) * g.g(i, l) * g.g(j, k);
      const auto Lij = osp_generator_0(g, i, j);
      const auto Lkl = osp_generator_0(g, k, l);
      t.push_back(c * (Lij * Lkl));
    }
  }
  return LinearOperator::sum(t);
}

/// r^2 nabla_b^2 - E_b(m - 2 + E_b).
inline LinearOperator laplace_beltrami_bosonic(int m) {
  const auto E = euler_bosonic(m);
  return LinearOperator::multiply_by(r2_bosonic(m)) * nabla2_bosonic(m) -
         E * (LinearOperator::scale(Rational(m - 2)) + E);
}

/// theta^2 nabla_f^2 - E_f(-2n - 2 + E_f).
inline LinearOperator laplace_beltrami_fermionic(int n) {
  const auto E = euler_fermionic(n);
  return LinearOperator::multiply_by(theta2(n)) * nabla2_fermionic(n) -
         E * (LinearOperator::scale(Rational(-2 * n - 2)) + E);
}

/// Outcome of an identity check over a range of degrees.
struct CheckResult {
  bool pass = true;
  std::string failure;  // first failing case, empty on pass
};

/// [nabla^2/2, R^2/2] = E + M/2, [nabla^2/2, E + M/2] = nabla^2, [R^2/2, E + M/2] = -R^2,
/// as matrices on P_k for k <= k_max.
inline CheckResult check_sl2(int m, int n, int k_max) {
  const int M = m - 2 * n;
  const Rational half(1, 2);
  const auto D = half * nabla2(m, n);
  const auto X = LinearOperator::multiply_by(r2(m, n) * half);
  const auto H = euler(m, n) + LinearOperator::scale(Rational(M, 2));
  for (int k = 0; k <= k_max; ++k) {
    // Each commutator is compared as a product of matrices between homogeneous components.
    const auto Dk = matrix_of(D, m, n, k);
    const auto Xk = matrix_of(X, m, n, k);
    const auto Hk = matrix_of(H, m, n, k);
    const auto Dk2 = matrix_of(D, m, n, k + 2);
    const auto Xkm2 = matrix_of(X, m, n, k - 2);
    const auto Hkp2 = matrix_of(H, m, n, k + 2);
    const auto Hkm2 = matrix_of(H, m, n, k - 2);
    if (!(Dk2 * Xk - Xkm2 * Dk == Hk))
      return {false, "k=" + std::to_string(k) + ": [nabla^2/2, R^2/2] != E + M/2"};
    if (!(Dk * Hk - Hkm2 * Dk == Rational(2) * Dk))
      return {false, "k=" + std::to_string(k) + ": [nabla^2/2, E + M/2] != nabla^2"};
    if (!(Xk * Hk - Hkp2 * Xk == Rational(-2) * Xk))
      return {false, "k=" + std::to_string(k) + ": [R^2/2, E + M/2] != -R^2"};
  }
  return {};
}

/// Reduced Killing condition for F = sum_l F^l nabla_l with polynomial
/// coefficients F^l (0-based list of length m+2n).
inline bool killing_check(const std::vector<SuperPolynomial>& F, int m, int n) {
  const Metric g(m, n);
  if (static_cast<int>(F.size()) != g.size()) throw std::invalid_argument("killing_check: need m+2n coefficients");
  // Total parity |F| = |F^l| + [l], the same for every nonzero coefficient.
  int parity = -1;
  for (int l = 0; l < g.size(); ++l) {
    if (F[static_cast<std::size_t>(l)].is_zero()) continue;
    const int p = F[static_cast<std::size_t>(l)].parity();
    if (p < 0) throw std::invalid_argument("killing_check: coefficient not parity-homogeneous");
    const int total = (p + g.grade(l)) % 2;
    if (parity >= 0 && parity != total) throw std::invalid_argument("killing_check: inconsistent total parity");
    parity = total;
  }
  if (parity < 0) return true;
  for (int j = 0; j < g.size(); ++j) {
    for (int k = 0; k < g.size(); ++k) {
      const int e = ((g.grade(j) + g.grade(k)) * parity + g.grade(j) * g.grade(k)) % 2;
      const SuperPolynomial lhs = g.nabla_upper(j).apply(F[static_cast<std::size_t>(k)]) +
                                  (e ? Rational(-1) : Rational(1)) * g.nabla_upper(k).apply(F[static_cast<std::size_t>(j)]);
      if (!lhs.is_zero()) return false;
    }
  }
  return true;
}

/// Coefficients of L_ij (1-based, any i, j) as a vector field sum_l F^l nabla_l.
inline std::vector<SuperPolynomial> osp_generator_field(int i, int j, int m, int n) {
  const Metric g(m, n);
  if (i < 1 || j < 1 || i > g.size() || j > g.size()) throw std::out_of_range("osp_generator_field: index out of range");
  std::vector<SuperPolynomial> F(static_cast<std::size_t>(g.size()));
  const int a = i - 1;
  const int b = j - 1;
  F[static_cast<std::size_t>(b)] += g.X(a);
  const Rational sign = (g.grade(a) && g.grade(b)) ? Rational(-1) : Rational(1);
  F[static_cast<std::size_t>(a)] -= g.X(b) * sign;
  return F;
}

/// Coefficients of d/dX^j (1-based) as a vector field.
inline std::vector<SuperPolynomial> upper_derivative_field(int j, int m, int n) {
  const Metric g(m, n);
  if (j < 1 || j > g.size()) throw std::out_of_range("upper_derivative_field: index out of range");
  std::vector<SuperPolynomial> F(static_cast<std::size_t>(g.size()));
  F[static_cast<std::size_t>(j - 1)] = SuperPolynomial(1);
  return F;
}

/// Coefficients of d/dX_i = sum_j g_{ij} nabla_j (1-based) as a vector field.
inline std::vector<SuperPolynomial> lower_derivative_field(int i, int m, int n) {
  const Metric g(m, n);
  if (i < 1 || i > g.size()) throw std::out_of_range("lower_derivative_field: index out of range");
  std::vector<SuperPolynomial> F(static_cast<std::size_t>(g.size()));
  for (int b = 0; b < g.size(); ++b) F[static_cast<std::size_t>(b)] = SuperPolynomial(g.g(i - 1, b));
  return F;
}

/// Converts a vector field sum_l F^l nabla_l to the operator it defines.
inline LinearOperator vector_field_operator(const std::vector<SuperPolynomial>& F, int m, int n) {
  const Metric g(m, n);
  std::vector<LinearOperator> t;
  for (int l = 0; l < g.size(); ++l)
    if (!F[static_cast<std::size_t>(l)].is_zero())
      t.push_back(LinearOperator::multiply_by(F[static_cast<std::size_t>(l)]) * g.d_upper(l));
  return LinearOperator::sum(t);
}

}  // namespace superh
