#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superh {

/// Number of commuting coordinates supported by the fixed-size monomial layout.
inline constexpr int kMaxBosonic = 12;
/// Number of Grassmann generators supported (bits of the fermionic mask).
inline constexpr int kMaxFermionic = 64;

/// x_1^{a_1}...x_m^{a_m} * xg_{j_1}...xg_{j_r} with j_1 < ... < j_r.
///
/// Variables are 0-based internally: bosonic index i stands for x_{i+1},
/// fermionic index j for xg_{j+1}, bit j of `mask`.
struct SuperMonomial {
  std::array<std::uint8_t, kMaxBosonic> exps{};
  std::uint64_t mask = 0;

  [[nodiscard]] int bosonic_degree() const noexcept {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
  }
  [[nodiscard]] int fermionic_degree() const noexcept { return std::popcount(mask); }
  [[nodiscard]] int degree() const noexcept { return bosonic_degree() + fermionic_degree(); }
  [[nodiscard]] int parity() const noexcept { return fermionic_degree() & 1; }
  [[nodiscard]] bool is_one() const noexcept { return mask == 0 && bosonic_degree() == 0; }

  static SuperMonomial bosonic(int i, int power = 1) {
    if (i < 0 || i >= kMaxBosonic) throw std::out_of_range("bosonic variable index out of range");
    SuperMonomial mo;
    mo.exps[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(power);
    return mo;
  }
  static SuperMonomial fermionic(int j) {
    if (j < 0 || j >= kMaxFermionic) throw std::out_of_range("fermionic variable index out of range");
    SuperMonomial mo;
    mo.mask = std::uint64_t{1} << j;
    return mo;
  }

  friend bool operator==(const SuperMonomial&, const SuperMonomial&) = default;
};

/// Graded order: total degree, then number of Grassmann factors, then bosonic
/// exponents compared lexicographically with larger exponents first, then the
/// Grassmann masks (a lower first differing generator sorts first).
inline bool monomial_less(const SuperMonomial& a, const SuperMonomial& b) noexcept {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  const int fa = a.fermionic_degree();
  const int fb = b.fermionic_degree();
  if (fa != fb) return fa < fb;
  for (std::size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  if (a.mask == b.mask) return false;
  const std::uint64_t diff = a.mask ^ b.mask;
  return (a.mask & (diff & (~diff + 1))) != 0;
}

struct MonomialLess {
  bool operator()(const SuperMonomial& a, const SuperMonomial& b) const noexcept { return monomial_less(a, b); }
};

struct MonomialHash {
  std::size_t operator()(const SuperMonomial& mo) const noexcept {
    std::uint64_t h = mo.mask * 0x9E3779B97F4A7C15ULL;
    for (auto e : mo.exps) h = (h ^ e) * 0x100000001B3ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Sign of moving the generators of b past those of a and sorting (a*b),
/// or 0 when a and b share a Grassmann generator.
inline int fermionic_product_sign(std::uint64_t a, std::uint64_t b) noexcept {
  if (a & b) return 0;
  int swaps = 0;
  std::uint64_t rest = b;
  while (rest) {
    const int j = std::countr_zero(rest);
    rest &= rest - 1;
    // Each generator of a with larger index must be passed.
    swaps += std::popcount(a >> j);
  }
  return (swaps & 1) ? -1 : 1;
}

/// Product of monomials; returns the sign (0, 1 or -1) and writes the product.
inline int multiply_monomials(const SuperMonomial& a, const SuperMonomial& b, SuperMonomial& out) noexcept {
  const int s = fermionic_product_sign(a.mask, b.mask);
  if (s == 0) return 0;
  for (std::size_t i = 0; i < out.exps.size(); ++i) out.exps[i] = static_cast<std::uint8_t>(a.exps[i] + b.exps[i]);
  out.mask = a.mask | b.mask;
  return s;
}

/// All monomials of total degree k in m bosonic and 2n Grassmann variables,
/// sorted by monomial_less.
inline std::vector<SuperMonomial> monomial_basis(int m, int n, int k) {
  if (m < 0 || n < 0 || k < 0) throw std::invalid_argument("monomial_basis: negative parameter");
  if (m > kMaxBosonic || 2 * n > kMaxFermionic) throw std::out_of_range("monomial_basis: too many variables");
  std::vector<SuperMonomial> out;
  const int nf = 2 * n;
  // Fermionic masks grouped by size.
  std::vector<std::vector<std::uint64_t>> masks(static_cast<std::size_t>(nf + 1));
  if (nf <= 24) {
    for (std::uint64_t mk = 0; mk < (std::uint64_t{1} << nf); ++mk) masks[static_cast<std::size_t>(std::popcount(mk))].push_back(mk);
  } else {
    throw std::out_of_range("monomial_basis: too many Grassmann variables to enumerate");
  }
  std::vector<std::array<std::uint8_t, kMaxBosonic>> bos;
  std::array<std::uint8_t, kMaxBosonic> cur{};
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m - 1) {
      cur[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(left);
      bos.push_back(cur);
      cur[static_cast<std::size_t>(i)] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
      rec(i + 1, left - e);
    }
    cur[static_cast<std::size_t>(i)] = 0;
  };
  for (int f = 0; f <= std::min(k, nf); ++f) {
    const int d = k - f;
    bos.clear();
    if (m == 0) {
      if (d != 0) continue;
      bos.push_back(cur);
    } else {
      if (d > 255) throw std::out_of_range("monomial_basis: exponent overflow");
      rec(0, d);
    }
    for (const auto& b : bos) {
      for (auto mk : masks[static_cast<std::size_t>(f)]) {
        SuperMonomial mo;
        mo.exps = b;
        mo.mask = mk;
        out.push_back(mo);
      }
    }
  }
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

/// Index of `mo` in a sorted basis, or -1.
inline long basis_index(const std::vector<SuperMonomial>& basis, const SuperMonomial& mo) noexcept {
  auto it = std::lower_bound(basis.begin(), basis.end(), mo, MonomialLess{});
  if (it == basis.end() || !(*it == mo)) return -1;
  return static_cast<long>(it - basis.begin());
}

}  // namespace superh
