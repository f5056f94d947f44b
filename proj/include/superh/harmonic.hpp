#pragma once

// Spherical harmonics on R^{m|2n}: kernels of the super Laplacian, their
// dimensions, the Fischer decomposition, the polynomials f_{k,p,q}, the
// so(m) + sp(2n) pieces of H_k and the projections onto them.

#include <superh/diffops.hpp>

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace superh {

/// Subspace of P_k in R^{m|2n}, in monomial_basis coordinates.
struct PolySpace {
  int m = 0;
  int n = 0;
  int k = 0;
  Subspace space;

  PolySpace() = default;
  PolySpace(int m_, int n_, int k_)
      : m(m_), n(n_), k(k_), space(k_ < 0 ? 0 : basis_of(m_, n_, k_).size()) {}
  PolySpace(int m_, int n_, int k_, Subspace s) : m(m_), n(n_), k(k_), space(std::move(s)) {}

  [[nodiscard]] std::size_t dim() const noexcept { return space.dim(); }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return space.ambient_dim(); }

  /// Echelon basis as polynomials.
  [[nodiscard]] std::vector<SuperPolynomial> basis() const {
    std::vector<SuperPolynomial> out;
    out.reserve(space.dim());
    for (const auto& r : space.rows()) out.push_back(from_vector(r, m, n, k));
    return out;
  }
  [[nodiscard]] bool contains(const SuperPolynomial& f) const {
    if (f.is_zero()) return true;
    if (f.degree() != k) return false;
    return space.contains(to_vector(f, m, n, k));
  }
  bool add(const SuperPolynomial& f) { return space.add(to_vector(f, m, n, k)); }

  friend bool operator==(const PolySpace& a, const PolySpace& b) {
    return a.m == b.m && a.n == b.n && a.k == b.k && a.space == b.space;
  }
};

/// Span of the given homogeneous polynomials of degree k.
inline PolySpace span_of(int m, int n, int k, const std::vector<SuperPolynomial>& polys) {
  PolySpace s(m, n, k);
  DenseAccumulator acc(s.ambient_dim());
  for (const auto& f : polys) s.space.add(to_vector(f, m, n, k), acc);
  return s;
}

/// H_k = P_k intersected with the kernel of the super Laplacian.
inline PolySpace harmonic_basis(int m, int n, int k) {
  if (m < 0 || n < 0 || m + n < 1 || k < 0) throw std::invalid_argument("harmonic_basis: need m+n >= 1, k >= 0");
  return PolySpace(m, n, k, kernel(matrix_of(nabla2(m, n), m, n, k)));
}

/// Bosonic harmonics of degree p in m variables.
inline PolySpace bosonic_harmonics(int m, int p) {
  if (m < 0 || p < 0) throw std::invalid_argument("bosonic_harmonics: negative parameter");
  return PolySpace(m, 0, p, kernel(matrix_of(nabla2_bosonic(m), m, 0, p)));
}

/// Fermionic harmonics of degree q in 2n Grassmann variables.
inline PolySpace fermionic_harmonics(int n, int q) {
  if (n < 0 || q < 0 || q > n) throw std::invalid_argument("fermionic_harmonics: need 0 <= q <= n");
  return PolySpace(0, n, q, kernel(matrix_of(nabla2_fermionic(n), 0, n, q)));
}

/// Closed form for dim H_k, m >= 1.
inline long long dim_Hk(int m, int n, int k) {
  if (m < 1) throw std::invalid_argument("dim_Hk: formula requires m >= 1");
  if (n < 0 || k < 0) throw std::invalid_argument("dim_Hk: negative parameter");
  Rational s(0);
  for (int i = 0; i <= std::min(k, 2 * n); ++i) s += binomial(2 * n, i) * binomial(k - i + m - 1, m - 1);
  for (int i = 0; i <= std::min(k - 2, 2 * n); ++i) s -= binomial(2 * n, i) * binomial(k - i + m - 3, m - 1);
  return s.to_int64();
}

/// dim H_p^b = C(p+m-1, m-1) - C(p+m-3, m-1).
inline long long dim_bosonic_harmonics(int m, int p) {
  if (p < 0) return 0;
  if (m == 0) return p == 0 ? 1 : 0;
  return (binomial(p + m - 1, m - 1) - binomial(p + m - 3, m - 1)).to_int64();
}

/// dim H_q^f = C(2n, q) - C(2n, q-2) for q <= n.
inline long long dim_fermionic_harmonics(int n, int q) {
  if (q < 0 || q > n) return 0;
  return (binomial(2 * n, q) - binomial(2 * n, q - 2)).to_int64();
}

struct FischerPart {
  int j = 0;         // power of R^2
  PolySpace space;   // R^{2j} H_{k-2j} inside P_k
};

struct FischerResult {
  std::vector<FischerPart> parts;
  bool direct = false;  // dimensions add up
  bool spans = false;   // the sum is all of P_k
  [[nodiscard]] bool direct_sum_flag() const noexcept { return direct && spans; }
};

/// P_k against the sum of R^{2j} H_{k-2j}. For m = 0 the parts follow the
/// truncated decomposition (theta^{2j} H^f_{k-2j} with j <= n - (k - 2j)).
inline FischerResult fischer(int m, int n, int k) {
  if (m < 0 || n < 0 || m + n < 1 || k < 0) throw std::invalid_argument("fischer: need m+n >= 1, k >= 0");
  FischerResult res;
  const SuperPolynomial R2 = r2(m, n);
  Subspace total(basis_of(m, n, k).size());
  std::size_t dim_sum = 0;
  for (int j = 0; 2 * j <= k; ++j) {
    const int d = k - 2 * j;
    if (m == 0 && j > n - d) continue;
    const PolySpace H = harmonic_basis(m, n, d);
    const SuperPolynomial R2j = pow(R2, j);
    std::vector<SuperPolynomial> imgs;
    for (const auto& h : H.basis()) imgs.push_back(R2j * h);
    PolySpace part = span_of(m, n, k, imgs);
    dim_sum += H.dim();  // the sum is direct only if multiplication is injective as well
    total = total.sum(part.space);
    res.parts.push_back({j, std::move(part)});
  }
  res.direct = total.dim() == dim_sum;
  res.spans = total.dim() == total.ambient_dim();
  return res;
}

/// f_{k,p,q} = sum_s a_s r^{2k-2s} theta^{2s}.
inline SuperPolynomial f_poly(int k, int p, int q, int m, int n) {
  if (m < 1 || n < 0 || p < 0 || q < 0 || q > n || k < 0 || k > n - q)
    throw std::invalid_argument("f_poly: need m >= 1, 0 <= q <= n, 0 <= k <= n - q");
  const SuperPolynomial r = r2_bosonic(m);
  const SuperPolynomial t = theta2(n);
  const Rational top = Rational(m, 2) + Rational(p + k - 1);  // m/2 + p + k - 1
  SuperPolynomial f;
  Rational falling(1);
  for (int s = 0; s <= k; ++s) {
    if (s > 0) falling *= top - Rational(s - 1);
    const Rational a = binomial(k, s) * factorial(n - q - s) / factorial(n - q - k) * falling;
    f += pow(r, k - s) * pow(t, s) * a;
  }
  return f;
}

/// One so(m) + sp(2n) piece f_{l,p,q} H_p^b (x) H_q^f of H_k, k = 2l + p + q.
struct HarmonicPiece {
  int l = 0;
  int p = 0;
  int q = 0;
  SuperPolynomial f;
  PolySpace space;
  [[nodiscard]] std::size_t dim() const noexcept { return space.dim(); }
};

/// Products f * hb * hf over bases of H_p^b and H_q^f.
inline std::vector<SuperPolynomial> piece_vectors(int l, int p, int q, int m, int n) {
  const SuperPolynomial f = f_poly(l, p, q, m, n);
  const auto hb = bosonic_harmonics(m, p).basis();
  const auto hf = fermionic_harmonics(n, q).basis();
  std::vector<SuperPolynomial> out;
  out.reserve(hb.size() * hf.size());
  for (const auto& b : hb) {
    const SuperPolynomial fb = f * b;
    for (const auto& c : hf) out.push_back(fb * c);
  }
  return out;
}

inline HarmonicPiece harmonic_piece(int l, int p, int q, int m, int n) {
  HarmonicPiece piece;
  piece.l = l;
  piece.p = p;
  piece.q = q;
  piece.f = f_poly(l, p, q, m, n);
  piece.space = span_of(m, n, 2 * l + p + q, piece_vectors(l, p, q, m, n));
  return piece;
}

/// Index triples (l, p, q) of the decomposition of H_k, including pieces of dimension zero.
inline std::vector<std::array<int, 3>> piece_labels(int n, int k) {
  std::vector<std::array<int, 3>> out;
  for (int j = 0; j <= std::min(n, k); ++j)
    for (int l = 0; l <= std::min(n - j, (k - j) / 2); ++l) out.push_back({l, k - 2 * l - j, j});
  return out;
}

struct HkDecomposition {
  int m = 0;
  int n = 0;
  int k = 0;
  std::vector<HarmonicPiece> pieces;  // nonzero pieces only
  bool verified = false;              // independent and summing to H_k
  std::string mismatch;
};

inline HkDecomposition decompose_Hk(int m, int n, int k) {
  if (m < 1 || n < 0 || k < 0) throw std::invalid_argument("decompose_Hk: need m >= 1");
  HkDecomposition d;
  d.m = m;
  d.n = n;
  d.k = k;
  Subspace total(basis_of(m, n, k).size());
  std::size_t dim_sum = 0;
  for (const auto& [l, p, q] : piece_labels(n, k)) {
    if (dim_bosonic_harmonics(m, p) == 0 || dim_fermionic_harmonics(n, q) == 0) continue;
    HarmonicPiece piece = harmonic_piece(l, p, q, m, n);
    const auto expected = static_cast<std::size_t>(dim_bosonic_harmonics(m, p) * dim_fermionic_harmonics(n, q));
    if (piece.dim() != expected && d.mismatch.empty())
      d.mismatch = "piece (" + std::to_string(l) + "," + std::to_string(p) + "," + std::to_string(q) + ") has dimension " +
                   std::to_string(piece.dim()) + ", expected " + std::to_string(expected);
    dim_sum += piece.dim();
    total = total.sum(piece.space.space);
    d.pieces.push_back(std::move(piece));
  }
  const PolySpace H = harmonic_basis(m, n, k);
  if (d.mismatch.empty() && total.dim() != dim_sum) d.mismatch = "pieces are not independent";
  if (d.mismatch.empty() && !(total == H.space)) d.mismatch = "pieces do not sum to H_k";
  d.verified = d.mismatch.empty();
  return d;
}

/// Product of factors (Delta + shift) / denom in the commuting Casimirs
/// Delta_{LB,b} and Delta_{LB,f}.
struct CasimirFactor {
  bool fermionic = false;
  Rational shift;
  Rational denom;
};

struct ProjectionQ {
  int r = 0;
  int s = 0;
  int k = 0;
  int m = 0;
  int n = 0;
  std::vector<CasimirFactor> factors;
  bool spectral_fallback = false;  // bosonic product replaced by interpolation over occurring eigenvalues

  [[nodiscard]] LinearOperator op() const {
    std::vector<LinearOperator> chain;
    const auto Db = laplace_beltrami_bosonic(m);
    const auto Df = laplace_beltrami_fermionic(n);
    for (const auto& f : factors)
      chain.push_back(f.denom.inverse() * ((f.fermionic ? Df : Db) + LinearOperator::scale(f.shift)));
    return LinearOperator::compose(chain);
  }

  /// Applies the projection to a vector of P_k given the Casimir matrices on P_k.
  [[nodiscard]] SparseVec apply(const SparseVec& v, const SparseMatrix& Db, const SparseMatrix& Df) const {
    SparseVec w = v;
    DenseAccumulator acc(Db.rows());
    for (const auto& f : factors) {
      if (w.empty()) break;
      SparseVec img = (f.fermionic ? Df : Db).apply(w, acc);
      w = sparse_scale(sparse_axpy(img, w, f.shift), f.denom.inverse());
    }
    return w;
  }
};

/// Q_{r,s}^k. Where a bosonic denominator vanishes (only for m = 1) the bosonic
/// product is replaced by the interpolating projector over the bosonic
/// Casimir eigenvalues that actually occur in H_k; force_spectral uses that
/// projector unconditionally.
inline ProjectionQ projection_Q(int r, int s, int k, int m, int n, bool force_spectral = false) {
  if (m < 1 || n < 0 || k < 0) throw std::invalid_argument("projection_Q: need m >= 1");
  if (r < 0 || s < 0 || s > std::min(n, k) || r > std::min(n - s, (k - s) / 2))
    throw std::invalid_argument("projection_Q: piece (r, k-2r-s, s) does not exist");
  ProjectionQ Q{r, s, k, m, n, {}, false};
  const int p = k - 2 * r - s;
  bool zero_denominator = force_spectral;
  for (int i = 0; i <= k && !zero_denominator; ++i) {
    if (i == p) continue;
    const Rational den = Rational((i - p) * (k + i - 2 * r - s + m - 2));
    if (den.is_zero()) {
      zero_denominator = true;
      break;
    }
    Q.factors.push_back({false, Rational(i * (m - 2 + i)), den});
  }
  if (zero_denominator) {
    Q.factors.clear();
    Q.spectral_fallback = true;
    const Rational lambda(-p * (m - 2 + p));
    std::vector<Rational> mus;
    for (const auto& [l2, p2, q2] : piece_labels(n, k)) {
      if (dim_bosonic_harmonics(m, p2) == 0 || dim_fermionic_harmonics(n, q2) == 0) continue;
      const Rational mu(-p2 * (m - 2 + p2));
      if (mu == lambda || std::find(mus.begin(), mus.end(), mu) != mus.end()) continue;
      mus.push_back(mu);
    }
    for (const auto& mu : mus) Q.factors.push_back({false, -mu, lambda - mu});
  }
  for (int j = 0; j <= std::min(n, k); ++j) {
    if (j == s) continue;
    Q.factors.push_back({true, Rational(j * (-2 * n - 2 + j)), Rational((j - s) * (j + s - 2 * n - 2))});
  }
  return Q;
}

/// Identity relating L_{1, m+1} f_{k,p,q} to f_{k-1,p+1,q+1} x_1 xg_1.
inline bool verify_generator_identity(int k, int p, int q, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("verify_generator_identity: need m >= 1, n >= 1");
  const SuperPolynomial lhs = osp_generator(1, m + 1, m, n)(f_poly(k, p, q, m, n));
  if (k == 0) return lhs.is_zero();
  const Rational c = Rational(2 * k) * (Rational(m - 2 * n, 2) + Rational(p + q + k - 1));
  const SuperPolynomial rhs = f_poly(k - 1, p + 1, q + 1, m, n) * SuperPolynomial::x(0) * SuperPolynomial::xg(0) * c;
  return lhs == rhs;
}

}  // namespace superh
