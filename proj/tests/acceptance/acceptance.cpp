// Acceptance runner: one PASS/FAIL line per criterion, exact arithmetic only.
// Grid: m in 1..4, n in 0..2, k <= 6 unless a criterion states otherwise.

#include <superh/cli.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace superh;

namespace {

constexpr int kMax = 6;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failure;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) failure = what;
    pass = pass && ok;
  }
};

std::string cell(int m, int n, int k) {
  return "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
}

template <class F>
void grid(int m_lo, int m_hi, int n_lo, int n_hi, F f) {
  for (int m = m_lo; m <= m_hi; ++m)
    for (int n = n_lo; n <= n_hi; ++n)
      if (m + n >= 1) f(m, n);
}

Outcome sl2_relations() {
  Outcome o;
  int cells = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    const auto res = check_sl2(m, n, kMax);
    o.check(res.pass, "(" + std::to_string(m) + "," + std::to_string(n) + "): " + res.failure);
    // Second route: the commutators applied to every basis monomial.
    const Rational M(m - 2 * n);
    const auto D = nabla2(m, n);
    const auto E = euler(m, n);
    const SuperPolynomial R2 = r2(m, n);
    for (int k = 0; k <= kMax; ++k) {
      ++cells;
      for (const auto& mo : basis_of(m, n, k)) {
        const SuperPolynomial f(mo);
        const bool a = D(R2 * f) - R2 * D(f) == Rational(4) * E(f) + Rational(2) * M * f;
        const bool b = D(E(f)) - E(D(f)) == Rational(2) * D(f);
        const bool c = R2 * E(f) - E(R2 * f) == Rational(-2) * (R2 * f);
        o.check(a && b && c, "relation fails on " + to_string(f) + " at " + cell(m, n, k));
      }
    }
  });
  o.detail = std::to_string(cells) + " cells, matrix and operator routes";
  return o;
}

Outcome laplace_beltrami_forms() {
  Outcome o;
  int vectors = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    const auto A = laplace_beltrami(m, n);
    const auto B = laplace_beltrami_from_generators(m, n);
    for (int k = 0; k <= kMax; ++k) {
      o.check(matrix_of(A, m, n, k) == matrix_of(B, m, n, k), "forms differ at " + cell(m, n, k));
      const Rational ev(-k * (m - 2 * n - 2 + k));
      for (const auto& h : harmonic_basis(m, n, k).basis()) {
        ++vectors;
        o.check(A(h) == ev * h, "eigenvalue fails on " + to_string(h));
      }
    }
  });
  o.detail = std::to_string(vectors) + " harmonic basis vectors";
  return o;
}

Outcome dimension_formula() {
  Outcome o;
  int cells = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    for (int k = 0; k <= kMax; ++k) {
      ++cells;
      o.check(dim_Hk(m, n, k) == static_cast<long long>(harmonic_basis(m, n, k).dim()), "rank differs at " + cell(m, n, k));
    }
    o.check(dim_Hk(m, n, 1) == m + 2 * n, "dim H_1 at " + cell(m, n, 1));
  });
  o.check(dim_Hk(2, 1, 2) == 7, "dim H_2(2,1)");
  o.detail = std::to_string(cells) + " cells; dim H_2(2,1) = " + std::to_string(dim_Hk(2, 1, 2));
  return o;
}

Outcome fischer_decomposition() {
  Outcome o;
  int degenerate = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    bool all = true;
    for (int k = 0; k <= kMax; ++k) all = all && fischer(m, n, k).direct_sum_flag();
    const bool expected = !in_minus_2N(m - 2 * n);
    if (!expected) ++degenerate;
    o.check(all == expected, "Fischer flag at (" + std::to_string(m) + "," + std::to_string(n) + ")");
  });
  for (int n = 1; n <= 2; ++n) {
    std::size_t total = 0;
    for (int k = 0; k <= 2 * n; ++k) {
      const auto f = fischer(0, n, k);
      o.check(f.direct_sum_flag(), "truncated decomposition at " + cell(0, n, k));
      for (const auto& p : f.parts) total += p.space.dim();
    }
    o.check(total == (std::size_t{1} << (2 * n)), "truncated parts do not fill the Grassmann algebra");
  }
  o.detail = "fails exactly on " + std::to_string(degenerate) + " (m,n) with M in -2N; m=0 truncated for n<=2";
  return o;
}

Outcome projections() {
  Outcome o;
  int fallback_cells = 0;
  int spectral_checks = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    for (int k = 0; k <= kMax; ++k) {
      const auto d = decompose_Hk(m, n, k);
      o.check(d.verified, cell(m, n, k) + ": " + d.mismatch);
      const auto Db = matrix_of(laplace_beltrami_bosonic(m), m, n, k);
      const auto Df = matrix_of(laplace_beltrami_fermionic(n), m, n, k);
      bool fallback = false;
      for (const auto& [r, p, s] : piece_labels(n, k)) {
        std::vector<ProjectionQ> routes{projection_Q(r, s, k, m, n)};
        fallback = fallback || routes[0].spectral_fallback;
        if (m <= 2 && !routes[0].spectral_fallback) routes.push_back(projection_Q(r, s, k, m, n, true));
        spectral_checks += static_cast<int>(routes.size()) - 1;
        for (const auto& Q : routes)
          for (const auto& pc : d.pieces)
            for (const auto& v : pc.space.space.rows()) {
              const SparseVec w = Q.apply(v, Db, Df);
              o.check((pc.l == r && pc.q == s) ? w == v : w.empty(),
                       "Q_" + std::to_string(r) + "," + std::to_string(s) + " at " + cell(m, n, k));
            }
      }
      if (fallback) ++fallback_cells;
    }
  });
  o.detail = "fallback needed in " + std::to_string(fallback_cells) + " cells (all m=1); spectral route also checked in " +
             std::to_string(spectral_checks) + " m=2 projections";
  return o;
}

Outcome generator_identity() {
  Outcome o;
  int cases = 0;
  grid(1, 4, 1, 2, [&](int m, int n) {
    for (int q = 0; q < n; ++q)
      for (int k = 0; k <= n - q; ++k)
        for (int p = 0; 2 * k + p + q <= kMax; ++p) {
          ++cases;
          o.check(verify_generator_identity(k, p, q, m, n), "identity fails at (k,p,q)=" + cell(k, p, q));
        }
  });
  o.detail = std::to_string(cases) + " parameter sets";
  return o;
}

Outcome integration() {
  Outcome o;
  std::size_t monomials = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    PizzettiCache cache(m, n);
    for (int k = 0; k <= kMax; ++k)
      for (const auto& mo : basis_of(m, n, k)) {
        ++monomials;
        const SuperPolynomial f(mo);
        const ScaledRational a = cache(f);
        const ScaledRational b = supersphere_integral_phi(f, m, n);
        o.check(a == b, to_string(f) + ": " + a.str() + " vs " + b.str() + " at " + cell(m, n, k));
      }
    const auto inv = invariance_suite(m, n, kMax);
    o.check(inv.pass, "invariance at (" + std::to_string(m) + "," + std::to_string(n) + "): " + inv.failure);
  });
  o.detail = std::to_string(monomials) + " monomials; invariance suite on every (m,n)";
  return o;
}

Outcome irreducibility() {
  Outcome o;
  int reducible = 0;
  int witnesses = 0;
  grid(2, 4, 1, 2, [&](int m, int n) {
    for (int k = 0; k <= kMax; ++k) {
      const RepSpace R = rep_space({SpaceKind::Hk, m, n, k});
      const auto res = analyze_irreducibility(R);
      const bool expected = cli::predicted_irreducible(m, n, k);
      o.check(res.verdict != Verdict::Inconclusive, "inconclusive at " + cell(m, n, k) + ": " + res.problem);
      o.check((res.verdict == Verdict::Irreducible) == expected, "verdict at " + cell(m, n, k));
      if (res.verdict == Verdict::Reducible) {
        // Certificate: the submodule named by the piece graph is invariant and proper.
        ++reducible;
        const auto dec = even_decomposition(R.rep, k);
        std::vector<char> used(dec.pieces.size(), 0);
        Subspace S(R.dim());
        for (auto u : res.proper_submodule)
          if (!used[res.nodes[u].piece]) {
            used[res.nodes[u].piece] = 1;
            S = S.sum(dec.pieces[res.nodes[u].piece].space);
          }
        o.check(S.dim() > 0 && S.dim() < R.dim() && is_invariant(R.rep, S), "bad submodule at " + cell(m, n, k));
      } else if (R.dim() <= 80) {
        o.check(closures_from_basis_are_whole(R.rep), "proper closure in irreducible " + cell(m, n, k));
      }
      if (in_window(m, n, k)) {
        ++witnesses;
        o.check(indecomposability_witness(R).verified, "no cyclic vector at " + cell(m, n, k));
      }
    }
  });
  o.detail = std::to_string(reducible) + " reducible cells with invariant-subspace certificates; " +
             std::to_string(witnesses) + " window cells indecomposable";
  return o;
}

Outcome window_structure() {
  Outcome o;
  int windows = 0;
  grid(1, 4, 0, 2, [&](int m, int n) {
    for (int k = 0; k <= kMax; ++k) {
      o.check(simple_dim(m, n, k) == simple_dim_by_quotient(m, n, k), "simple_dim at " + cell(m, n, k));
      if (!in_window(m, n, k)) continue;
      ++windows;
      const auto w = window_submodule_check(m, n, k);
      o.check(w.pass, cell(m, n, k) + ": " + w.failure);
      const int M = m - 2 * n;
      o.check(static_cast<long long>(w.dim_quotient) == dim_Hk(m, n, k) - dim_Hk(m, n, 2 - M - k),
              "quotient dimension at " + cell(m, n, k));
    }
  });
  o.check(simple_dim(2, 1, 2) == 6, "L_(2,0) at (2,1)");
  o.detail = std::to_string(windows) + " window cells; L_(2,0) at (2,1) has dim " + std::to_string(simple_dim(2, 1, 2));
  return o;
}

Outcome branching_rules() {
  Outcome o;
  int verified = 0;
  int ncr = 0;
  grid(2, 4, 0, 2, [&](int m, int n) {
    for (int k = 0; k <= kMax; ++k) {
      const auto br = branching(m, n, k);
      const bool flagged = br.which == BranchCase::NotCompletelyReducible;
      o.check(flagged == cli::predicted_not_completely_reducible(m, n, k), "flag at " + cell(m, n, k));
      if (flagged) {
        ++ncr;
        o.check(casimir_jordan_block_witness(m, n, k), "no Jordan block at " + cell(m, n, k));
        continue;
      }
      o.check(br.dims_ok, "dimensions at " + cell(m, n, k));
      const auto v = verify_branching(m, n, k);
      o.check(v.pass, cell(m, n, k) + ": " + v.failure);
      ++verified;
    }
  });
  o.detail = std::to_string(verified) + " cells restricted explicitly; " + std::to_string(ncr) +
             " not completely reducible, each with a Casimir Jordan block";
  return o;
}

Outcome killing() {
  Outcome o;
  int fields = 0;
  grid(0, 4, 0, 2, [&](int m, int n) {
    const int N = m + 2 * n;
    for (int i = 1; i <= N; ++i) {
      fields += 2;
      o.check(killing_check(upper_derivative_field(i, m, n), m, n), "d/dX^" + std::to_string(i));
      o.check(killing_check(lower_derivative_field(i, m, n), m, n), "d/dX_" + std::to_string(i));
      for (int j = 1; j <= N; ++j) {
        ++fields;
        o.check(killing_check(osp_generator_field(i, j, m, n), m, n), "L_" + std::to_string(i) + std::to_string(j));
      }
    }
    if (m >= 1) {
      std::vector<SuperPolynomial> euler_field(static_cast<std::size_t>(N));
      euler_field[0] = SuperPolynomial::x(0);
      o.check(!killing_check(euler_field, m, n), "x1 d/dx1 accepted");
    }
  });
  o.detail = std::to_string(fields) + " fields accepted; Euler-type field rejected";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sl2 relations", sl2_relations},
      {"Laplace-Beltrami double construction", laplace_beltrami_forms},
      {"dimension formula", dimension_formula},
      {"Fischer decomposition", fischer_decomposition},
      {"H_k pieces and projections", projections},
      {"generator identity on f_{k,p,q}", generator_identity},
      {"Pizzetti equals phi-sharp form", integration},
      {"irreducibility windows", irreducibility},
      {"window structure", window_structure},
      {"branching", branching_rules},
      {"Killing characterization", killing},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s  %2zu  %-38s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.pass ? o.detail.c_str() : o.failure.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
