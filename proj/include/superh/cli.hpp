#pragma once

// Commands behind the superh executable. Each returns a Report; the
// executable only parses flags and renders.

#include <superh/integration.hpp>
#include <superh/modules.hpp>
#include <superh/parallel.hpp>
#include <superh/report.hpp>
#include <superh/text.hpp>

#include <array>
#include <charconv>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace superh::cli {

/// Bad flags or parameters outside a command's domain (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  int lo = 0;
  int hi = 0;
  [[nodiscard]] std::vector<int> values() const {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
  }
  [[nodiscard]] std::string str() const { return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi); }
};

/// "a" or "a..b" with 0 <= a <= b.
inline Range parse_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 0)
      throw UsageError("invalid range '" + std::string(text) + "'");
    return v;
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string_view::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw UsageError("empty range '" + std::string(text) + "'");
  return r;
}

struct Grid {
  Range m;
  Range n;
  Range k;
};

inline Json parameters(const Grid& g) { return Json{{"m", g.m.str()}, {"n", g.n.str()}, {"k", g.k.str()}}; }

using Cell = std::array<int, 3>;

struct CellOutcome {
  std::vector<Json> rows;
  Status status = Status::Pass;
  std::string failure;

  void fail(const std::string& what) {
    if (status != Status::Fail) failure = what;
    status = Status::Fail;
  }
};

inline std::string cell_name(int m, int n, int k) {
  return "(m,n,k)=(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
}

/// Evaluates cells in parallel and appends their rows in cell order.
inline void run_cells(Report& rep, const std::vector<Cell>& cells, const std::function<CellOutcome(const Cell&)>& body) {
  std::vector<CellOutcome> out(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) { out[i] = body(cells[i]); });
  for (auto& o : out) {
    for (auto& r : o.rows) rep.rows.push_back(std::move(r));
    if (o.status == Status::Fail) {
      rep.fail(o.failure);
    } else {
      rep.raise(o.status);
    }
  }
}

inline std::vector<Cell> cells_of(const Grid& g, int min_m = 0) {
  std::vector<Cell> cells;
  for (int m : g.m.values())
    for (int n : g.n.values())
      for (int k : g.k.values())
        if (m >= min_m && m + n >= 1) cells.push_back({m, n, k});
  return cells;
}

inline void require_m(const Grid& g, int min_m, const std::string& what) {
  if (g.m.lo < min_m) throw UsageError(what + " needs m >= " + std::to_string(min_m));
  if (g.m.hi + g.n.hi < 1) throw UsageError(what + " needs m + n >= 1");
}

inline Json row(int m, int n, int k) { return Json{{"m", m}, {"n", n}, {"k", k}}; }

// --- dims --------------------------------------------------------------------

inline Report cmd_dims(const Grid& g) {
  require_m(g, 1, "dims");
  Report rep{"dims", parameters(g), {}, Status::Pass, std::nullopt};
  run_cells(rep, cells_of(g, 1), [](const Cell& c) {
    const auto [m, n, k] = c;
    CellOutcome o;
    Json r = row(m, n, k);
    r["H"] = dim_Hk(m, n, k);
    r["L"] = simple_dim(m, n, k);
    r["window"] = in_window(m, n, k);
    o.rows.push_back(std::move(r));
    return o;
  });
  return rep;
}

// --- check suites ------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sl2",          "lb",      "killing",         "projections", "fischer",
                                              "integrals",    "irreducibility", "windows", "branching"};
  return names;
}

inline bool predicted_irreducible(int m, int n, int k) {
  const int M = m - 2 * n;
  return !in_minus_2N(M) || k > 2 - M || k < 2 - M / 2;
}

/// Predicted failure of complete reducibility under osp(m-1|2n).
inline bool predicted_not_completely_reducible(int m, int n, int k) {
  const int M = m - 2 * n;
  return M <= 1 && (M % 2 != 0) && 2 * k >= 4 + 1 - M;
}

/// Fischer flag at (m, n, k): true and false where determined, null otherwise.
inline Json fischer_expectation(int m, int n, int k) {
  const int M = m - 2 * n;
  if (m == 0) return true;
  if (!in_minus_2N(M) || k < 2 - M / 2) return true;
  if (k == 2 - M / 2) return false;
  return nullptr;
}

namespace suites {

inline CellOutcome sl2(int m, int n, int k_max) {
  CellOutcome o;
  const CheckResult res = check_sl2(m, n, k_max);
  Json r{{"m", m}, {"n", n}, {"k_max", k_max}, {"pass", res.pass}};
  if (!res.pass) o.fail(cell_name(m, n, k_max) + ": " + res.failure);
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome lb(int m, int n, int k) {
  CellOutcome o;
  const bool agree = matrix_of(laplace_beltrami(m, n), m, n, k) == matrix_of(laplace_beltrami_from_generators(m, n), m, n, k);
  const Rational ev(-k * (m - 2 * n - 2 + k));
  const auto Delta = laplace_beltrami(m, n);
  bool eigen = true;
  std::string bad;
  const auto H = harmonic_basis(m, n, k).basis();
  for (const auto& h : H)
    if (Delta(h) != ev * h) {
      eigen = false;
      bad = to_string(h);
      break;
    }
  Json r = row(m, n, k);
  r["dim_H"] = H.size();
  r["forms_agree"] = agree;
  r["eigenvalue"] = ev.str();
  r["eigen_ok"] = eigen;
  if (!agree) o.fail(cell_name(m, n, k) + ": the two Laplace-Beltrami forms differ");
  if (!eigen) o.fail(cell_name(m, n, k) + ": not an eigenvector: " + bad);
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome killing(int m, int n) {
  CellOutcome o;
  const int N = m + 2 * n;
  int fields = 0;
  bool all = true;
  std::string bad;
  auto test = [&](const std::vector<SuperPolynomial>& F, const std::string& name) {
    ++fields;
    if (!killing_check(F, m, n) && all) {
      all = false;
      bad = name;
    }
  };
  for (int i = 1; i <= N; ++i) {
    test(upper_derivative_field(i, m, n), "d/dX^" + std::to_string(i));
    test(lower_derivative_field(i, m, n), "d/dX_" + std::to_string(i));
    for (int j = i; j <= N; ++j) test(osp_generator_field(i, j, m, n), "L_" + std::to_string(i) + "," + std::to_string(j));
  }
  Json r{{"m", m}, {"n", n}, {"fields", fields}, {"all_killing", all}};
  if (!all) o.fail("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + "): " + bad + " fails the Killing condition");
  if (m >= 1) {
    std::vector<SuperPolynomial> euler(static_cast<std::size_t>(N));
    euler[0] = SuperPolynomial::x(0);
    const bool rejected = !killing_check(euler, m, n);
    r["euler_rejected"] = rejected;
    if (!rejected) o.fail("x1 d/dx1 passes the Killing condition");
  }
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome projections(int m, int n, int k) {
  CellOutcome o;
  const auto d = decompose_Hk(m, n, k);
  const auto Db = matrix_of(laplace_beltrami_bosonic(m), m, n, k);
  const auto Df = matrix_of(laplace_beltrami_fermionic(n), m, n, k);
  bool delta = true;
  bool fallback = false;
  std::string bad;
  for (const auto& [r, p, s] : piece_labels(n, k)) {
    const auto Q = projection_Q(r, s, k, m, n);
    fallback = fallback || Q.spectral_fallback;
    for (const auto& pc : d.pieces)
      for (const auto& v : pc.space.space.rows()) {
        const SparseVec w = Q.apply(v, Db, Df);
        const bool ok = (pc.l == r && pc.q == s) ? w == v : w.empty();
        if (!ok && delta) {
          delta = false;
          bad = "Q_" + std::to_string(r) + "," + std::to_string(s) + " on piece (" + std::to_string(pc.l) + "," +
                std::to_string(pc.p) + "," + std::to_string(pc.q) + ")";
        }
      }
  }
  Json row_ = row(m, n, k);
  row_["pieces"] = d.pieces.size();
  row_["direct_sum"] = d.verified;
  row_["delta"] = delta;
  row_["fallback"] = fallback;
  if (!d.verified) o.fail(cell_name(m, n, k) + ": " + d.mismatch);
  if (!delta) o.fail(cell_name(m, n, k) + ": " + bad);
  o.rows.push_back(std::move(row_));
  return o;
}

inline CellOutcome fischer(int m, int n, int k) {
  CellOutcome o;
  const auto f = superh::fischer(m, n, k);
  const Json expected = fischer_expectation(m, n, k);
  Json r = row(m, n, k);
  r["direct"] = f.direct;
  r["spans"] = f.spans;
  r["expected"] = expected;
  if (!expected.is_null() && expected.get<bool>() != f.direct_sum_flag())
    o.fail(cell_name(m, n, k) + ": Fischer flag " + (f.direct_sum_flag() ? "true" : "false"));
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome pizzetti_vs_phi(int m, int n, int k) {
  CellOutcome o;
  PizzettiCache cache(m, n);
  std::size_t count = 0;
  bool agree = true;
  for (const auto& mo : basis_of(m, n, k)) {
    ++count;
    const SuperPolynomial f(mo);
    const ScaledRational a = cache(f);
    const ScaledRational b = supersphere_integral_phi(f, m, n);
    if (!(a == b) && agree) {
      agree = false;
      o.fail(cell_name(m, n, k) + ": " + to_string(f) + " gives " + a.str() + " and " + b.str());
    }
  }
  Json r = row(m, n, k);
  r["monomials"] = count;
  r["methods_agree"] = agree;
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome invariance(int m, int n, int k_max) {
  CellOutcome o;
  const auto rep = invariance_suite(m, n, k_max);
  Json r{{"m", m}, {"n", n}, {"k_max", k_max}};
  r["generator_checks"] = rep.generator_checks;
  r["radial_checks"] = rep.radial_checks;
  r["orthogonality_checks"] = rep.orthogonality_checks;
  r["invariant"] = rep.pass;
  if (!rep.pass) o.fail("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + "): " + rep.failure);
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome irreducibility(int m, int n, int k, unsigned seed) {
  CellOutcome o;
  const RepSpace R = rep_space({SpaceKind::Hk, m, n, k});
  Json r = row(m, n, k);
  r["dim"] = R.dim();
  if (R.dim() == 0) {
    r["verdict"] = "zero space";
    o.rows.push_back(std::move(r));
    return o;
  }
  const auto res = analyze_irreducibility(R);
  const bool expected = predicted_irreducible(m, n, k);
  r["verdict"] = to_string(res.verdict);
  r["expected"] = expected ? "irreducible" : "reducible";
  if (res.verdict == Verdict::Inconclusive) {
    o.status = Status::Inconclusive;
  } else if ((res.verdict == Verdict::Irreducible) != expected) {
    o.fail(cell_name(m, n, k) + ": H_k is " + to_string(res.verdict));
  }
  if (in_window(m, n, k)) {
    const auto w = indecomposability_witness(R, seed);
    r["indecomposable"] = w.verified ? "verified" : "inconclusive";
    if (!w.verified && o.status == Status::Pass) o.status = Status::Inconclusive;
  }
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome windows(int m, int n, int k) {
  CellOutcome o;
  if (simple_dim(m, n, k) != simple_dim_by_quotient(m, n, k))
    o.fail(cell_name(m, n, k) + ": closed-form simple dimension differs from the quotient");
  if (!in_window(m, n, k)) return o;
  const auto w = window_submodule_check(m, n, k);
  Json r = row(m, n, k);
  r["dim_H"] = w.dim_Hk;
  r["dim_submodule"] = w.dim_submodule;
  r["dim_quotient"] = w.dim_quotient;
  r["L"] = simple_dim(m, n, k);
  r["subspace_identity"] = w.subspace_identity;
  r["submodule_irreducible"] = w.submodule_irreducible;
  r["quotient_irreducible"] = w.quotient_irreducible;
  if (!w.pass) o.fail(cell_name(m, n, k) + ": " + w.failure);
  o.rows.push_back(std::move(r));
  return o;
}

inline CellOutcome branching(int m, int n, int k) {
  CellOutcome o;
  const auto br = superh::branching(m, n, k);
  const bool predicted_ncr = predicted_not_completely_reducible(m, n, k);
  Json r = row(m, n, k);
  r["case"] = to_string(br.which);
  if ((br.which == BranchCase::NotCompletelyReducible) != predicted_ncr)
    o.fail(cell_name(m, n, k) + ": branching case " + to_string(br.which));
  if (br.which == BranchCase::NotCompletelyReducible) {
    const bool jordan = casimir_jordan_block_witness(m, n, k);
    r["jordan_witness"] = jordan;
    if (!jordan && o.status == Status::Pass) o.status = Status::Inconclusive;
  } else {
    r["l"] = br.ls;
    r["dims"] = br.dims;
    r["dims_ok"] = br.dims_ok;
    const auto v = verify_branching(m, n, k);
    r["verified"] = v.pass;
    if (!br.dims_ok) o.fail(cell_name(m, n, k) + ": branch dimensions do not add up");
    if (!v.pass) o.fail(cell_name(m, n, k) + ": " + v.failure);
  }
  o.rows.push_back(std::move(r));
  return o;
}

}  // namespace suites

inline std::vector<Cell> mn_cells(const Grid& g, int min_m) {
  std::vector<Cell> cells;
  for (int m : g.m.values())
    for (int n : g.n.values())
      if (m >= min_m && m + n >= 1) cells.push_back({m, n, g.k.hi});
  return cells;
}

/// Runs one suite into rep. With strict, cells outside the suite's domain are
/// a usage error; otherwise they are skipped.
inline void run_suite(Report& rep, const std::string& suite, const Grid& g, unsigned seed, bool strict) {
  auto need = [&](int min_m) {
    if (strict) require_m(g, min_m, "check " + suite);
  };
  auto tag = [&](std::size_t from) {
    if (strict) return;
    for (std::size_t i = from; i < rep.rows.size(); ++i) {
      Json tagged{{"suite", suite}};
      for (const auto& [key, value] : rep.rows[i].items()) tagged[key] = value;
      rep.rows[i] = std::move(tagged);
    }
  };
  const std::size_t start = rep.rows.size();
  if (suite == "sl2") {
    need(0);
    if (g.k.hi < 2) {
      if (strict) throw UsageError("check sl2 needs k_max >= 2");
      return;
    }
    run_cells(rep, mn_cells(g, 0), [](const Cell& c) { return suites::sl2(c[0], c[1], c[2]); });
  } else if (suite == "lb") {
    need(0);
    run_cells(rep, cells_of(g, 0), [](const Cell& c) { return suites::lb(c[0], c[1], c[2]); });
  } else if (suite == "killing") {
    need(0);
    run_cells(rep, mn_cells(g, 0), [](const Cell& c) { return suites::killing(c[0], c[1]); });
  } else if (suite == "projections") {
    need(1);
    run_cells(rep, cells_of(g, 1), [](const Cell& c) { return suites::projections(c[0], c[1], c[2]); });
  } else if (suite == "fischer") {
    need(0);
    run_cells(rep, cells_of(g, 0), [](const Cell& c) { return suites::fischer(c[0], c[1], c[2]); });
  } else if (suite == "integrals") {
    need(1);
    run_cells(rep, cells_of(g, 1), [](const Cell& c) { return suites::pizzetti_vs_phi(c[0], c[1], c[2]); });
    run_cells(rep, mn_cells(g, 1), [](const Cell& c) { return suites::invariance(c[0], c[1], c[2]); });
  } else if (suite == "irreducibility") {
    need(1);
    run_cells(rep, cells_of(g, 1), [seed](const Cell& c) { return suites::irreducibility(c[0], c[1], c[2], seed); });
  } else if (suite == "windows") {
    need(1);
    run_cells(rep, cells_of(g, 1), [](const Cell& c) { return suites::windows(c[0], c[1], c[2]); });
  } else if (suite == "branching") {
    need(2);
    run_cells(rep, cells_of(g, 2), [](const Cell& c) { return suites::branching(c[0], c[1], c[2]); });
  } else {
    throw UsageError("unknown suite '" + suite + "'");
  }
  tag(start);
}

inline Report cmd_check(const std::string& suite, const Grid& g, unsigned seed) {
  Report rep{"check " + suite, parameters(g), {}, Status::Pass, std::nullopt};
  rep.parameters["seed"] = seed;
  if (suite == "all") {
    if (g.m.hi + g.n.hi < 1) throw UsageError("check all needs m + n >= 1");
    for (const auto& s : suite_names()) run_suite(rep, s, g, seed, false);
  } else {
    run_suite(rep, suite, g, seed, true);
  }
  return rep;
}

// --- integrate ---------------------------------------------------------------

inline Report cmd_integrate(const std::string& expr, int m, int n) {
  if (m < 1) throw UsageError("integrate needs m >= 1");
  Report rep{"integrate", Json{{"expr", expr}, {"m", m}, {"n", n}}, {}, Status::Pass, std::nullopt};
  SuperPolynomial f;
  try {
    f = parse_polynomial(expr, m, n);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const ScaledRational a = pizzetti(f, m, n);
  const ScaledRational b = supersphere_integral_phi(f, m, n);
  rep.rows.push_back(Json{{"method", "pizzetti"}, {"value", to_json(a)}});
  rep.rows.push_back(Json{{"method", "phi_sharp"}, {"value", to_json(b)}});
  if (!(a == b)) {
    rep.fail("pizzetti " + a.str() + " differs from phi_sharp " + b.str());
  } else if (in_minus_2N(m - 2 * n)) {
    rep.raise(Status::Degenerate);
  }
  return rep;
}

// --- decompose, branch, fischer ----------------------------------------------

inline Report cmd_decompose(const Grid& g) {
  require_m(g, 1, "decompose");
  Report rep{"decompose", parameters(g), {}, Status::Pass, std::nullopt};
  run_cells(rep, cells_of(g, 1), [](const Cell& c) {
    const auto [m, n, k] = c;
    CellOutcome o;
    auto d = decompose_Hk(m, n, k);
    std::stable_sort(d.pieces.begin(), d.pieces.end(), [](const HarmonicPiece& a, const HarmonicPiece& b) {
      return std::pair(a.l, a.q) < std::pair(b.l, b.q);
    });
    for (const auto& pc : d.pieces) {
      Json r = row(m, n, k);
      r["l"] = pc.l;
      r["p"] = pc.p;
      r["q"] = pc.q;
      r["dim"] = pc.dim();
      r["expected"] = dim_bosonic_harmonics(m, pc.p) * dim_fermionic_harmonics(n, pc.q);
      o.rows.push_back(std::move(r));
    }
    if (!d.verified) o.fail(cell_name(m, n, k) + ": " + d.mismatch);
    return o;
  });
  return rep;
}

inline Report cmd_branch(const Grid& g) {
  require_m(g, 2, "branch");
  Report rep{"branch", parameters(g), {}, Status::Pass, std::nullopt};
  run_cells(rep, cells_of(g, 2), [](const Cell& c) { return suites::branching(c[0], c[1], c[2]); });
  return rep;
}

inline Report cmd_fischer(const Grid& g) {
  require_m(g, 0, "fischer");
  Report rep{"fischer", parameters(g), {}, Status::Pass, std::nullopt};
  run_cells(rep, cells_of(g, 0), [](const Cell& c) {
    const auto [m, n, k] = c;
    CellOutcome o;
    const auto f = fischer(m, n, k);
    Json r = row(m, n, k);
    std::vector<std::size_t> dims;
    for (const auto& p : f.parts) dims.push_back(p.space.dim());
    r["parts"] = dims;
    r["direct"] = f.direct;
    r["spans"] = f.spans;
    if (!f.direct_sum_flag()) {
      // The truncated m = 0 decomposition always holds; for m >= 1 this marks M in -2N.
      if (m == 0) {
        o.fail(cell_name(m, n, k) + ": truncated decomposition fails");
      } else {
        o.status = Status::Degenerate;
      }
    }
    o.rows.push_back(std::move(r));
    return o;
  });
  return rep;
}

}  // namespace superh::cli
