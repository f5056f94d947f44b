#pragma once

// osp(m|2n)-module structure of P_k, H_k and their quotients: generator
// matrices, submodule closures, irreducibility, the simple modules
// L_(k,0,...,0) and branching to osp(m-1|2n).

#include <superh/harmonic.hpp>

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace superh {

/// Matrix of L_ij (1-based, i <= j) on a representation.
struct RepGenerator {
  int i = 0;
  int j = 0;
  int parity = 0;
  SparseMatrix matrix;
};

/// Matrices of osp generators on a finite-dimensional space. The generators
/// are those L_ij of R^{m|2n} with bosonic indices >= first, so first = 1 is
/// osp(m|2n) and first = 2 is osp(m-1|2n) acting on the last coordinates.
class Representation {
 public:
  Representation() = default;
  Representation(int m, int n, int first, std::size_t dim, std::vector<RepGenerator> gens)
      : m_(m), n_(n), first_(first), dim_(dim), gens_(std::move(gens)) {
    for (std::size_t t = 0; t < gens_.size(); ++t) index_[{gens_[t].i, gens_[t].j}] = t;
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int first() const noexcept { return first_; }
  /// Number of bosonic coordinates the subalgebra rotates.
  [[nodiscard]] int effective_m() const noexcept { return m_ - first_ + 1; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<RepGenerator>& generators() const noexcept { return gens_; }

  [[nodiscard]] bool in_range(int i) const noexcept { return i >= first_ && i <= m_ + 2 * n_; }

  /// L_ij for any order of the 1-based indices; L_ji = -(-1)^{[i][j]} L_ij.
  [[nodiscard]] SparseMatrix generator(int i, int j) const {
    if (!in_range(i) || !in_range(j)) throw std::out_of_range("Representation::generator: index outside the subalgebra");
    if (i == j && i <= m_) return SparseMatrix(dim_, dim_);
    if (i <= j) return gens_[index_.at({i, j})].matrix;
    const bool both_odd = i > m_ && j > m_;
    return Rational(both_odd ? 1 : -1) * gens_[index_.at({j, i})].matrix;
  }

  /// The same space as a module for the subalgebra fixing one more bosonic coordinate.
  [[nodiscard]] Representation restricted_to_subalgebra() const {
    std::vector<RepGenerator> g;
    for (const auto& G : gens_)
      if (G.i > first_ && G.j > first_) g.push_back(G);
    return {m_, n_, first_ + 1, dim_, std::move(g)};
  }

 private:
  int m_ = 0;
  int n_ = 0;
  int first_ = 1;
  std::size_t dim_ = 0;
  std::vector<RepGenerator> gens_;
  std::map<std::pair<int, int>, std::size_t> index_;
};

/// Casimir built from generator matrices, -1/2 sum L_ij g^{il} g^{jk} L_kl,
/// over the bosonic indices, the fermionic indices, or all of them.
enum class CasimirBlock { Bosonic, Fermionic, Full };

inline SparseMatrix casimir(const Representation& rep, CasimirBlock block) {
  const Metric g(rep.m(), rep.n());
  std::vector<int> idx;
  for (int a = rep.first() - 1; a < g.size(); ++a) {
    const bool ferm = g.grade(a) == 1;
    if (block == CasimirBlock::Full || (block == CasimirBlock::Fermionic) == ferm) idx.push_back(a);
  }
  SparseMatrix C(rep.dim(), rep.dim());
  for (int i : idx) {
    const int l = g.partner(i);
    for (int j : idx) {
      const int k = g.partner(j);
      const Rational c = Rational(-1, 2) * g.g(i, l) * g.g(j, k);
      C = SparseMatrix::combine(C, rep.generator(i + 1, j + 1) * rep.generator(k + 1, l + 1), c);
    }
  }
  return C;
}

inline bool is_invariant(const Representation& rep, const Subspace& W) {
  DenseAccumulator acc(rep.dim());
  for (const auto& G : rep.generators())
    for (const auto& w : W.rows())
      if (!W.reduce(G.matrix.apply(w, acc), acc).empty()) return false;
  return true;
}

/// The module structure on an invariant subspace, in its echelon basis.
inline Representation restrict_to(const Representation& rep, const Subspace& W) {
  std::vector<RepGenerator> gens;
  DenseAccumulator acc(rep.dim());
  for (const auto& G : rep.generators()) {
    std::vector<SparseVec> cols;
    for (const auto& w : W.rows()) {
      SparseVec img = G.matrix.apply(w, acc);
      if (!W.contains(img)) throw std::invalid_argument("restrict_to: subspace is not invariant");
      cols.push_back(W.coordinates_sparse(img));
    }
    gens.push_back({G.i, G.j, G.parity, SparseMatrix::from_columns(W.dim(), std::move(cols))});
  }
  return {rep.m(), rep.n(), rep.first(), W.dim(), std::move(gens)};
}

/// The module structure on V/W for an invariant W.
inline Representation quotient_by(const Representation& rep, const Subspace& W) {
  if (!is_invariant(rep, W)) throw std::invalid_argument("quotient_by: subspace is not invariant");
  const QuotientSpace Q(Subspace::whole(rep.dim()), W);
  std::vector<RepGenerator> gens;
  DenseAccumulator acc(rep.dim());
  for (const auto& G : rep.generators()) {
    std::vector<SparseVec> cols;
    for (const auto& b : Q.complement().rows()) cols.push_back(Q.coordinates_sparse(G.matrix.apply(b, acc), acc));
    gens.push_back({G.i, G.j, G.parity, SparseMatrix::from_columns(Q.dim(), std::move(cols))});
  }
  return {rep.m(), rep.n(), rep.first(), Q.dim(), std::move(gens)};
}

/// Smallest invariant subspace containing the seeds.
inline Subspace submodule_closure(const Representation& rep, const std::vector<SparseVec>& seeds) {
  Subspace V(rep.dim());
  DenseAccumulator acc(rep.dim());
  std::vector<SparseVec> todo;
  for (const auto& s : seeds)
    if (V.add(s, acc)) todo.push_back(s);
  while (!todo.empty() && V.dim() < rep.dim()) {
    const SparseVec v = std::move(todo.back());
    todo.pop_back();
    for (const auto& G : rep.generators()) {
      SparseVec w = G.matrix.apply(v, acc);
      if (!w.empty() && V.add(w, acc)) todo.push_back(std::move(w));
    }
  }
  return V;
}

/// Closure from every basis vector is the whole space. Necessary for
/// irreducibility; sufficient only when the submodules are spanned by basis vectors.
inline bool closures_from_basis_are_whole(const Representation& rep) {
  for (std::size_t i = 0; i < rep.dim(); ++i)
    if (submodule_closure(rep, {{{i, Rational(1)}}}).dim() != rep.dim()) return false;
  return true;
}

/// Joint eigenspace of the so and sp Casimirs, typed by (p, q).
struct EvenPiece {
  int p = 0;
  int q = 0;
  Rational lambda;  // so Casimir eigenvalue -p(p+m-2)
  Rational mu;      // sp Casimir eigenvalue -q(q-2n-2)
  Subspace space;
};

struct EvenDecomposition {
  std::vector<EvenPiece> pieces;
  bool complete = false;  // pieces span, and each is one irreducible so + sp type
  std::string problem;
};

namespace detail {

inline Subspace joint_kernel(const SparseMatrix& A, const SparseMatrix& B) {
  std::vector<SparseVec> cols(A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    cols[j] = A.column(j);
    for (const auto& [i, c] : B.column(j)) cols[j].emplace_back(i + A.rows(), c);
  }
  return kernel(SparseMatrix::from_columns(A.rows() + B.rows(), std::move(cols)));
}

inline SparseMatrix shifted(const SparseMatrix& A, const Rational& s) {
  return SparseMatrix::combine(A, SparseMatrix::identity(A.cols()), -s);
}

}  // namespace detail

/// Splits the space under the even subalgebra so(m') + sp(2n). Labels run
/// over p + q <= max_degree.
inline EvenDecomposition even_decomposition(const Representation& rep, int max_degree) {
  EvenDecomposition out;
  const int me = rep.effective_m();
  const int n = rep.n();
  const SparseMatrix Cb = casimir(rep, CasimirBlock::Bosonic);
  const SparseMatrix Cf = casimir(rep, CasimirBlock::Fermionic);
  // Group the candidate labels by eigenvalue pair.
  std::map<std::pair<Rational, Rational>, std::vector<std::pair<int, int>>> groups;
  for (int q = 0; q <= n; ++q)
    for (int p = 0; p + q <= max_degree; ++p) {
      if (dim_bosonic_harmonics(me, p) == 0 || dim_fermionic_harmonics(n, q) == 0) continue;
      groups[{Rational(-p * (p + me - 2)), Rational(-q * (q - 2 * n - 2))}].push_back({p, q});
    }
  std::size_t total = 0;
  out.complete = true;
  for (const auto& [ev, labels] : groups) {
    Subspace K = detail::joint_kernel(detail::shifted(Cb, ev.first), detail::shifted(Cf, ev.second));
    if (K.dim() == 0) continue;
    // Prefer the label whose parity matches the top degree.
    auto [p, q] = labels.front();
    for (const auto& [pp, qq] : labels)
      if ((pp + qq - max_degree) % 2 == 0) {
        p = pp;
        q = qq;
        break;
      }
    const auto expected = static_cast<std::size_t>(dim_bosonic_harmonics(me, p) * dim_fermionic_harmonics(n, q));
    if (K.dim() != expected && out.complete) {
      out.complete = false;
      out.problem = "eigenspace (" + std::to_string(p) + "," + std::to_string(q) + ") has dimension " +
                    std::to_string(K.dim()) + ", one copy has " + std::to_string(expected);
    }
    total += K.dim();
    out.pieces.push_back({p, q, ev.first, ev.second, std::move(K)});
  }
  if (total != rep.dim() && out.complete) {
    out.complete = false;
    out.problem = "eigenspaces span " + std::to_string(total) + " of " + std::to_string(rep.dim());
  }
  return out;
}

enum class Verdict { Irreducible, Reducible, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Irreducible:
      return "irreducible";
    case Verdict::Reducible:
      return "reducible";
    default:
      return "inconclusive";
  }
}

/// A vertex of the piece graph: an even piece, or for so(2) one of its two
/// complex charge halves (sign = +1 or -1).
struct PieceNode {
  std::size_t piece = 0;
  int sign = 0;
};

struct IrreducibilityResult {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<PieceNode> nodes;
  std::vector<std::vector<std::size_t>> edges;  // node -> nodes reachable by one generator
  std::vector<std::size_t> proper_submodule;   // node set of a proper submodule when reducible
  std::string problem;
};

/// Irreducibility over C. Every submodule is a sum of even pieces when the
/// space is multiplicity free under so(m') + sp(2n) with absolutely
/// irreducible pieces; it contains piece P' as soon as it contains P and some
/// generator maps P with a nonzero component into P'. One vector per piece
/// decides that, because the vectors of P without such a component form an
/// even submodule of P. The module is irreducible iff this graph is strongly
/// connected. For so(2) the real pieces are split into the charge
/// eigenspaces of L_{first,first+1}, handled through real and imaginary parts.
inline IrreducibilityResult analyze_irreducibility(const Representation& rep, int max_degree) {
  IrreducibilityResult res;
  if (rep.dim() == 0) {
    res.problem = "zero space";
    return res;
  }
  const auto dec = even_decomposition(rep, max_degree);
  if (!dec.complete) {
    res.problem = dec.problem;
    return res;
  }
  const SparseMatrix Cb = casimir(rep, CasimirBlock::Bosonic);
  const SparseMatrix Cf = casimir(rep, CasimirBlock::Fermionic);
  std::vector<Rational> lambdas, mus;
  for (const auto& pc : dec.pieces) {
    if (std::find(lambdas.begin(), lambdas.end(), pc.lambda) == lambdas.end()) lambdas.push_back(pc.lambda);
    if (std::find(mus.begin(), mus.end(), pc.mu) == mus.end()) mus.push_back(pc.mu);
  }
  DenseAccumulator acc(rep.dim());
  auto project = [&](const EvenPiece& pc, SparseVec w) {
    for (const auto& l : lambdas) {
      if (w.empty()) break;
      if (l == pc.lambda) continue;
      w = sparse_scale(sparse_axpy(Cb.apply(w, acc), w, -l), (pc.lambda - l).inverse());
    }
    for (const auto& u : mus) {
      if (w.empty()) break;
      if (u == pc.mu) continue;
      w = sparse_scale(sparse_axpy(Cf.apply(w, acc), w, -u), (pc.mu - u).inverse());
    }
    return w;
  };

  const bool so2 = rep.effective_m() == 2;
  SparseMatrix L;
  if (so2) L = rep.generator(rep.first(), rep.first() + 1);
  // J = L / p on a piece with p >= 1; J^2 = -1 is checked.
  auto J = [&](std::size_t piece, const SparseVec& v) {
    return sparse_scale(L.apply(v, acc), Rational(1, dec.pieces[piece].p));
  };
  for (std::size_t t = 0; t < dec.pieces.size(); ++t) {
    if (so2 && dec.pieces[t].p > 0) {
      for (const auto& v : dec.pieces[t].space.rows())
        if (sparse_axpy(J(t, J(t, v)), v, Rational(1)) != SparseVec{}) {
          res.problem = "L^2 is not -p^2 on an so(2) piece";
          return res;
        }
      // The -1 half always directly follows the +1 half.
      res.nodes.push_back({t, +1});
      res.nodes.push_back({t, -1});
    } else {
      res.nodes.push_back({t, 0});
    }
  }

  res.edges.assign(res.nodes.size(), {});
  for (std::size_t a = 0; a < res.nodes.size(); ++a) {
    const auto [src, s] = res.nodes[a];
    const SparseVec& v = dec.pieces[src].space.rows().front();
    const SparseVec Jv = s != 0 ? J(src, v) : SparseVec{};
    for (std::size_t b = 0; b < res.nodes.size(); ++b) {
      if (a == b) continue;
      const auto [dst, s2] = res.nodes[b];
      bool edge = false;
      for (const auto& G : rep.generators()) {
        // Component of G (v - i s J v) in the target, then (1 - i s2 J') applied.
        const SparseVec x = project(dec.pieces[dst], G.matrix.apply(v, acc));
        const SparseVec y = s != 0 ? project(dec.pieces[dst], G.matrix.apply(Jv, acc)) : SparseVec{};
        if (s2 == 0) {
          edge = !x.empty() || !y.empty();
        } else {
          const Rational ss(s * s2);
          const SparseVec re = sparse_axpy(x, J(dst, y), -ss);
          const SparseVec im = sparse_axpy(sparse_scale(y, Rational(s)), J(dst, x), Rational(s2));
          edge = !re.empty() || !im.empty();
        }
        if (edge) break;
      }
      if (edge) res.edges[a].push_back(b);
    }
  }

  // Real submodules are the node sets closed under edges and under swapping
  // the two charge halves of a piece (complex conjugation). Irreducible iff
  // every such closure of a single node is everything.
  auto conjugate = [&](std::size_t u) {
    if (res.nodes[u].sign == 0) return u;
    return res.nodes[u].sign > 0 ? u + 1 : u - 1;
  };
  for (std::size_t start = 0; start < res.nodes.size(); ++start) {
    std::vector<char> seen(res.nodes.size(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      std::vector<std::size_t> next = res.edges[u];
      next.push_back(conjugate(u));
      for (std::size_t w : next)
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(res.nodes.size())) {
      res.verdict = Verdict::Reducible;
      for (std::size_t u = 0; u < seen.size(); ++u)
        if (seen[u]) res.proper_submodule.push_back(u);
      return res;
    }
  }
  res.verdict = Verdict::Irreducible;
  return res;
}

// --- Spaces of polynomials as representations ---------------------------------

enum class SpaceKind { Pk, Hk, PkModR2, HkModSub };

inline std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Pk:
      return "Pk";
    case SpaceKind::Hk:
      return "Hk";
    case SpaceKind::PkModR2:
      return "PkModR2";
    default:
      return "HkModSub";
  }
}

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Hk;
  int m = 0;
  int n = 0;
  int k = 0;
};

/// R^2 P_{k-2} inside P_k.
inline Subspace r2_multiples(int m, int n, int k) {
  if (k < 2) return Subspace(basis_of(m, n, k).size());
  return column_space(matrix_of(LinearOperator::multiply_by(r2(m, n)), m, n, k - 2));
}

/// A space of degree-k polynomials (or a quotient of one) with its osp(m|2n) action.
class RepSpace {
 public:
  SpaceSpec spec;
  Representation rep;
  Subspace carrier;  // H_k or P_k in monomial coordinates
  Subspace divisor;  // zero for Pk and Hk
  std::vector<SparseVec> representatives;

  [[nodiscard]] std::size_t dim() const noexcept { return rep.dim(); }
  [[nodiscard]] bool is_quotient() const noexcept { return quotient_.has_value(); }

  /// Coordinates of (the class of) a vector of the carrier.
  [[nodiscard]] SparseVec coordinates(const SparseVec& v) const {
    if (!carrier.contains(v)) throw std::invalid_argument("RepSpace::coordinates: vector outside the space");
    if (quotient_) {
      DenseAccumulator acc(carrier.ambient_dim());
      return quotient_->coordinates_sparse(v, acc);
    }
    return carrier.coordinates_sparse(v);
  }
  [[nodiscard]] SparseVec coordinates(const SuperPolynomial& f) const {
    return coordinates(to_vector(f, spec.m, spec.n, spec.k));
  }

 private:
  std::optional<QuotientSpace> quotient_;
  friend RepSpace rep_space(const SpaceSpec& spec);
};

inline RepSpace rep_space(const SpaceSpec& spec) {
  const int m = spec.m, n = spec.n, k = spec.k;
  if (m < 0 || n < 0 || m + n < 1 || k < 0) throw std::invalid_argument("rep_space: need m+n >= 1, k >= 0");
  RepSpace R;
  R.spec = spec;
  const std::size_t N = basis_of(m, n, k).size();
  const bool harmonic = spec.kind == SpaceKind::Hk || spec.kind == SpaceKind::HkModSub;
  R.carrier = harmonic ? harmonic_basis(m, n, k).space : Subspace::whole(N);
  R.divisor = Subspace(N);
  if (spec.kind == SpaceKind::PkModR2) R.divisor = r2_multiples(m, n, k);
  if (spec.kind == SpaceKind::HkModSub) R.divisor = R.carrier.intersect(r2_multiples(m, n, k));
  if (spec.kind == SpaceKind::PkModR2 || spec.kind == SpaceKind::HkModSub) {
    R.quotient_.emplace(R.carrier, R.divisor);
    R.representatives = R.quotient_->complement().rows();
  } else {
    R.representatives = R.carrier.rows();
  }
  std::vector<RepGenerator> gens;
  DenseAccumulator acc(N);
  for (const auto& g : osp_generators(m, n)) {
    const SparseMatrix A = matrix_of(g.op, m, n, k);
    for (const auto& d : R.divisor.rows())
      if (!R.divisor.contains(A.apply(d, acc)))
        throw std::logic_error("rep_space: generator does not preserve the divisor");
    std::vector<SparseVec> cols;
    for (const auto& b : R.representatives) {
      const SparseVec img = A.apply(b, acc);
      if (!R.carrier.contains(img)) throw std::logic_error("rep_space: generator leaves the space");
      cols.push_back(R.quotient_ ? R.quotient_->coordinates_sparse(img, acc) : R.carrier.coordinates_sparse(img));
    }
    gens.push_back({g.i, g.j, g.parity, SparseMatrix::from_columns(R.representatives.size(), std::move(cols))});
  }
  R.rep = Representation(m, n, 1, R.representatives.size(), std::move(gens));
  return R;
}

inline IrreducibilityResult analyze_irreducibility(const RepSpace& R) { return analyze_irreducibility(R.rep, R.spec.k); }

/// Throws when the piece graph cannot decide.
inline bool is_irreducible(const RepSpace& R) {
  const auto res = analyze_irreducibility(R);
  if (res.verdict == Verdict::Inconclusive) throw std::domain_error("is_irreducible: " + res.problem);
  return res.verdict == Verdict::Irreducible;
}

/// Outcome of the cyclic-vector test: verified or inconclusive, never "decomposable".
struct IndecomposabilityWitness {
  bool verified = false;
  std::size_t candidate = 0;  // index of the cyclic vector among the candidates
  std::size_t tried = 0;
};

inline IndecomposabilityWitness indecomposability_witness(const Representation& rep,
                                                          const std::vector<SparseVec>& candidates) {
  IndecomposabilityWitness w;
  for (std::size_t t = 0; t < candidates.size(); ++t) {
    ++w.tried;
    if (submodule_closure(rep, {candidates[t]}).dim() == rep.dim()) {
      w.verified = true;
      w.candidate = t;
      return w;
    }
  }
  return w;
}

/// H_k^b, then random rational combinations of the basis.
inline std::vector<SparseVec> default_witness_candidates(const RepSpace& R, unsigned seed, int random_count = 3) {
  std::vector<SparseVec> out;
  for (const auto& h : bosonic_harmonics(R.spec.m, R.spec.k).basis()) {
    SparseVec v = to_vector(h, R.spec.m, R.spec.n, R.spec.k);
    if (!R.carrier.contains(v)) continue;
    SparseVec c = R.coordinates(v);
    if (!c.empty()) out.push_back(std::move(c));
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < random_count; ++t) {
    SparseVec v;
    for (std::size_t i = 0; i < R.dim(); ++i)
      if (int c = coef(rng); c != 0) v.emplace_back(i, Rational(c));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

inline IndecomposabilityWitness indecomposability_witness(const RepSpace& R, unsigned seed = 1) {
  return indecomposability_witness(R.rep, default_witness_candidates(R, seed));
}

// --- The window M in -2N, 2 - M/2 <= k <= 2 - M ---------------------------------

inline bool in_window(int m, int n, int k) {
  const int M = m - 2 * n;
  return in_minus_2N(M) && 2 - M / 2 <= k && k <= 2 - M;
}

struct WindowReport {
  bool pass = false;
  bool subspace_identity = false;     // R^{2k+M-2} H_{2-M-k} = H_k cap R^2 P_{k-2}
  bool submodule_invariant = false;
  bool submodule_irreducible = false;
  bool quotient_irreducible = false;
  bool quotient_dims_agree = false;   // HkModSub versus quotient of the H_k module
  std::size_t dim_Hk = 0;
  std::size_t dim_submodule = 0;
  std::size_t dim_quotient = 0;
  std::string failure;
};

inline WindowReport window_submodule_check(int m, int n, int k) {
  if (!in_window(m, n, k)) throw std::invalid_argument("window_submodule_check: (m,n,k) is outside the window");
  const int M = m - 2 * n;
  WindowReport rep;
  const int d = 2 - M - k;
  const int j = k - 1 + M / 2;  // R^{2j} = R^{2k+M-2}
  const SuperPolynomial Rj = pow(r2(m, n), j);
  std::vector<SuperPolynomial> gens;
  for (const auto& h : harmonic_basis(m, n, d).basis()) gens.push_back(Rj * h);
  const PolySpace A = span_of(m, n, k, gens);
  const Subspace B = harmonic_basis(m, n, k).space.intersect(r2_multiples(m, n, k));
  rep.subspace_identity = A.space == B;
  const RepSpace H = rep_space({SpaceKind::Hk, m, n, k});
  rep.dim_Hk = H.dim();
  Subspace W(H.dim());
  for (const auto& b : B.rows()) W.add(H.coordinates(b));
  rep.dim_submodule = W.dim();
  rep.submodule_invariant = is_invariant(H.rep, W);
  if (rep.submodule_invariant) {
    rep.submodule_irreducible = analyze_irreducibility(restrict_to(H.rep, W), k).verdict == Verdict::Irreducible;
    const Representation Q = quotient_by(H.rep, W);
    rep.dim_quotient = Q.dim();
    rep.quotient_irreducible = analyze_irreducibility(Q, k).verdict == Verdict::Irreducible;
    rep.quotient_dims_agree = Q.dim() == rep_space({SpaceKind::HkModSub, m, n, k}).dim();
  }
  rep.pass = rep.subspace_identity && rep.submodule_invariant && rep.submodule_irreducible &&
             rep.quotient_irreducible && rep.quotient_dims_agree;
  if (!rep.pass) {
    rep.failure = !rep.subspace_identity       ? "subspace identity"
                  : !rep.submodule_invariant   ? "submodule not invariant"
                  : !rep.submodule_irreducible ? "submodule reducible"
                  : !rep.quotient_irreducible  ? "quotient reducible"
                                               : "quotient dimensions differ";
  }
  return rep;
}

// --- L_(k,0,...,0): dimensions and so + sp content -------------------------------

/// Closed form for dim L_(k,0,...,0): the H_k count, corrected inside the window.
/// For m = 1 the spaces H_k are simple and the H_k count is returned.
inline long long simple_dim(int m, int n, int k) {
  if (m < 1 || n < 0 || k < 0) throw std::invalid_argument("simple_dim: need m >= 1");
  const long long base = dim_Hk(m, n, k);
  if (m == 1 || !in_window(m, n, k)) return base;
  const int M = m - 2 * n;
  Rational s(base);
  for (int i = 0; i <= std::min(-M - k, 2 * n); ++i) s += binomial(2 * n, i) * binomial(2 * n - k - i - 1, m - 1);
  for (int i = 0; i <= std::min(2 - M - k, 2 * n); ++i) s -= binomial(2 * n, i) * binomial(2 * n - k - i + 1, m - 1);
  return s.to_int64();
}

/// dim H_k - dim(H_k cap R^2 P_{k-2}) by linear algebra.
inline long long simple_dim_by_quotient(int m, int n, int k) {
  const Subspace H = harmonic_basis(m, n, k).space;
  return static_cast<long long>(H.dim() - H.intersect(r2_multiples(m, n, k)).dim());
}

struct SimplePiece {
  int j = 0;  // fermionic degree q
  int l = 0;
  int p = 0;
  long long dim = 0;
};

/// so(m) + sp(2n) content of L_(k,0,...,0), with l capped at k + M/2 - 2 in the window.
inline std::vector<SimplePiece> decompose_simple(int m, int n, int k) {
  if (m < 2 || n < 0 || k < 0) throw std::invalid_argument("decompose_simple: need m >= 2");
  const bool window = in_window(m, n, k);
  const int M = m - 2 * n;
  std::vector<SimplePiece> out;
  for (int j = 0; j <= std::min(n, k); ++j) {
    int lmax = std::min(n - j, (k - j) / 2);
    if (window) lmax = std::min(lmax, k + M / 2 - 2);
    for (int l = 0; l <= lmax; ++l) {
      const int p = k - 2 * l - j;
      const long long d = dim_bosonic_harmonics(m, p) * dim_fermionic_harmonics(n, j);
      if (d > 0) out.push_back({j, l, p, d});
    }
  }
  return out;
}

// --- Branching to osp(m-1|2n) ------------------------------------------------------

enum class BranchCase { Full, Window, NotCompletelyReducible };

inline std::string to_string(BranchCase c) {
  switch (c) {
    case BranchCase::Full:
      return "full";
    case BranchCase::Window:
      return "window";
    default:
      return "not completely reducible";
  }
}

inline BranchCase branch_case(int m, int n, int k) {
  const int M = m - 2 * n;
  if (in_minus_2N(M) && 2 - M / 2 <= k && k <= 2 - M) return BranchCase::Window;
  if (M <= 1 && (M % 2 != 0) && 2 * k >= 4 + 1 - M) return BranchCase::NotCompletelyReducible;
  return BranchCase::Full;
}

struct BranchReport {
  BranchCase which = BranchCase::Full;
  std::vector<int> ls;             // predicted L^{m-1|2n}_(l) summands
  std::vector<long long> dims;     // simple_dim(m-1, n, l)
  long long total = 0;             // simple_dim(m, n, k)
  bool dims_ok = false;            // total == sum of dims; false when no list is predicted
};

inline BranchReport branching(int m, int n, int k) {
  if (m < 2 || n < 0 || k < 0) throw std::invalid_argument("branching: need m >= 2");
  BranchReport r;
  r.which = branch_case(m, n, k);
  r.total = simple_dim(m, n, k);
  if (r.which == BranchCase::NotCompletelyReducible) return r;
  const int lo = r.which == BranchCase::Window ? 3 - (m - 2 * n) - k : 0;
  long long s = 0;
  for (int l = lo; l <= k; ++l) {
    r.ls.push_back(l);
    r.dims.push_back(simple_dim(m - 1, n, l));
    s += r.dims.back();
  }
  r.dims_ok = s == r.total;
  return r;
}

/// f(x_1, ..., x_m') as a function of x_2, ..., x_{m'+1}.
inline SuperPolynomial shift_bosonic(const SuperPolynomial& f, int by) {
  std::vector<SuperPolynomial::Term> terms;
  for (const auto& [mo, c] : f.terms()) {
    SuperMonomial s;
    s.mask = mo.mask;
    for (std::size_t i = 0; i + static_cast<std::size_t>(by) < s.exps.size(); ++i)
      s.exps[i + static_cast<std::size_t>(by)] = mo.exps[i];
    terms.emplace_back(s, c);
  }
  return SuperPolynomial::from_terms(std::move(terms));
}

struct BranchComponent {
  int l = 0;
  std::size_t dim = 0;
  long long expected = 0;
  Verdict verdict = Verdict::Inconclusive;
};

struct BranchVerification {
  bool pass = false;
  std::vector<BranchComponent> components;
  std::string failure;
};

/// Restricts L_(k,0,...,0) (as the image of H_k in P_k/R^2P_{k-2}) to
/// osp(m-1|2n) and cuts it with the images C_l of R_1^{k-l} H'_l (k - l even)
/// and x_1 R_1^{k-l-1} H'_l (k - l odd), where primes refer to R^{m-1|2n} on
/// x_2, ..., x_m. Checks that the C_l are irreducible, have the predicted
/// dimensions, vanish off the predicted list and add up directly to the module.
inline BranchVerification verify_branching(int m, int n, int k) {
  BranchVerification out;
  const BranchReport pred = branching(m, n, k);
  if (pred.which == BranchCase::NotCompletelyReducible) {
    out.failure = "no branching list is predicted";
    return out;
  }
  const RepSpace W = rep_space({SpaceKind::PkModR2, m, n, k});
  const Representation sub = W.rep.restricted_to_subalgebra();
  Subspace V(W.dim());
  const auto Hk = harmonic_basis(m, n, k);
  for (const auto& h : Hk.space.rows()) V.add(W.coordinates(h));
  const SuperPolynomial x1 = SuperPolynomial::x(0);
  const SuperPolynomial R1 = r2(m, n) - x1 * x1;
  Subspace all(W.dim());
  std::size_t total = 0;
  for (int l = 0; l <= k; ++l) {
    const bool odd = (k - l) % 2 != 0;
    const SuperPolynomial factor = (odd ? x1 : SuperPolynomial(1)) * pow(R1, (k - l) / 2);
    Subspace D(W.dim());
    for (const auto& h : harmonic_basis(m - 1, n, l).basis()) D.add(W.coordinates(factor * shift_bosonic(h, 1)));
    const Subspace C = V.intersect(D);
    const auto it = std::find(pred.ls.begin(), pred.ls.end(), l);
    BranchComponent comp{l, C.dim(), it == pred.ls.end() ? 0 : pred.dims[static_cast<std::size_t>(it - pred.ls.begin())]};
    if (C.dim() > 0) {
      if (!is_invariant(sub, C)) {
        out.failure = "component " + std::to_string(l) + " is not invariant";
        return out;
      }
      comp.verdict = analyze_irreducibility(restrict_to(sub, C), k).verdict;
    }
    total += C.dim();
    all = all.sum(C);
    out.components.push_back(comp);
  }
  out.pass = true;
  for (const auto& c : out.components) {
    if (static_cast<long long>(c.dim) != c.expected) {
      out.pass = false;
      out.failure = "component " + std::to_string(c.l) + " has dimension " + std::to_string(c.dim) + ", expected " +
                    std::to_string(c.expected);
      break;
    }
    if (c.dim > 0 && c.verdict != Verdict::Irreducible) {
      out.pass = false;
      out.failure = "component " + std::to_string(c.l) + " is " + to_string(c.verdict);
      break;
    }
  }
  if (out.pass && (total != V.dim() || !(all == V))) {
    out.pass = false;
    out.failure = "components do not add up directly to the module";
  }
  return out;
}

/// Certificate that the osp(m-1|2n) Casimir is not diagonalizable on
/// L_(k,0,...,0): prod (C - c_l)^2 = 0 but prod (C - c_l) != 0 over the
/// distinct values c_l = -l(l + M - 3), l = 0..k. A completely reducible
/// module has a diagonalizable Casimir.
inline bool casimir_jordan_block_witness(int m, int n, int k) {
  if (m < 2) throw std::invalid_argument("casimir_jordan_block_witness: need m >= 2");
  const RepSpace L = rep_space({SpaceKind::HkModSub, m, n, k});
  const SparseMatrix C = casimir(L.rep.restricted_to_subalgebra(), CasimirBlock::Full);
  const int M = m - 2 * n;
  std::vector<Rational> cs;
  for (int l = 0; l <= k; ++l) {
    const Rational c(-l * (l + M - 3));
    if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
  }
  DenseAccumulator acc(L.dim());
  bool nonzero_once = false;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    SparseVec v{{i, Rational(1)}};
    for (const auto& c : cs) v = sparse_axpy(C.apply(v, acc), v, -c);
    if (!v.empty()) nonzero_once = true;
    for (const auto& c : cs) v = sparse_axpy(C.apply(v, acc), v, -c);
    if (!v.empty()) return false;
  }
  return nonzero_once;
}

/// Structure constants of [L_a, L_b} read off on P_1, where the action is faithful.
inline CheckResult check_generator_brackets(const Representation& rep) {
  CheckResult res;
  const Representation F = [&] {
    Representation r = rep_space({SpaceKind::Pk, rep.m(), rep.n(), 1}).rep;
    while (r.first() < rep.first()) r = r.restricted_to_subalgebra();
    return r;
  }();
  const auto& gf = F.generators();
  const std::size_t N1 = F.dim();
  auto vec = [&](const SparseMatrix& A) {
    SparseVec v;
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (const auto& [i, c] : A.column(j)) v.emplace_back(j * N1 + i, c);
    return v;
  };
  std::vector<SparseVec> cols;
  for (const auto& G : gf) cols.push_back(vec(G.matrix));
  for (std::size_t a = 0; a < gf.size(); ++a)
    for (std::size_t b = a; b < gf.size(); ++b) {
      const Rational sign = (gf[a].parity && gf[b].parity) ? Rational(1) : Rational(-1);
      const SparseMatrix br = SparseMatrix::combine(gf[a].matrix * gf[b].matrix, gf[b].matrix * gf[a].matrix, sign);
      auto c = cols;
      c.push_back(vec(br));
      const Subspace K = kernel(SparseMatrix::from_columns(N1 * N1, std::move(c)));
      // One relation with a nonzero last coordinate gives the structure constants.
      const SparseVec* rel = nullptr;
      for (const auto& r : K.rows())
        if (!r.empty() && r.back().first == gf.size()) rel = &r;
      if (rel == nullptr) {
        res.pass = false;
        res.failure = "bracket outside the span of the generators on P_1";
        return res;
      }
      const Rational last = rel->back().second;
      const auto& A = rep.generators()[a].matrix;
      const auto& B = rep.generators()[b].matrix;
      SparseMatrix lhs = SparseMatrix::combine(A * B, B * A, sign);
      for (const auto& [t, c] : *rel)
        if (t < gf.size()) lhs = SparseMatrix::combine(lhs, rep.generators()[t].matrix, c / last);
      if (!lhs.is_zero()) {
        res.pass = false;
        res.failure = "[L_" + std::to_string(gf[a].i) + "," + std::to_string(gf[a].j) + ", L_" +
                      std::to_string(gf[b].i) + "," + std::to_string(gf[b].j) + "}";
        return res;
      }
    }
  return res;
}

}  // namespace superh
