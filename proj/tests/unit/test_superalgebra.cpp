#include <superh/text.hpp>

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace superh;

namespace {

SuperPolynomial x(int i) { return SuperPolynomial::x(i - 1); }
SuperPolynomial xg(int j) { return SuperPolynomial::xg(j - 1); }

// Grassmann monomial as a word of generator indices; the product is
// concatenation followed by a bubble sort that counts transpositions.
Rational word_sign(std::vector<int> word) {
  int swaps = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j) {
      if (word[j] == word[j + 1]) return Rational(0);
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        ++swaps;
      }
    }
  for (std::size_t j = 0; j + 1 < word.size(); ++j)
    if (word[j] == word[j + 1]) return Rational(0);
  return swaps % 2 ? Rational(-1) : Rational(1);
}

std::vector<int> mask_word(std::uint64_t mask) {
  std::vector<int> w;
  for (int j = 0; j < 64; ++j)
    if (mask >> j & 1U) w.push_back(j);
  return w;
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_EQ(Rational(0).str(), "0");
  EXPECT_EQ(Rational(-3, 6).str(), "-1/2");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, PromotesAndDemotesAgainstGmp) {
  std::mt19937_64 rng(7);
  Rational a(1);
  mpq_class oracle(1);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t num = static_cast<std::int64_t>(rng() >> 4) - (std::int64_t{1} << 58);
    const std::int64_t den = static_cast<std::int64_t>(rng() >> 5) + 1;
    Rational b(num, den);
    mpq_class qb(std::to_string(num) + "/" + std::to_string(den));
    qb.canonicalize();
    switch (i % 4) {
      case 0: a += b; oracle += qb; break;
      case 1: a *= b; oracle *= qb; break;
      case 2: a -= b; oracle -= qb; break;
      default: if (!b.is_zero()) { a /= b; oracle /= qb; } break;
    }
    ASSERT_EQ(a.to_mpq(), oracle) << i;
    // Bring it back to a small value now and then.
    if (i % 9 == 8) {
      a = a - a + Rational(i);
      oracle = i;
    }
  }
  Rational big = Rational::parse("123456789012345678901234567890/7");
  EXPECT_EQ((big - big), Rational(0));
  EXPECT_EQ((big / big), Rational(1));
  EXPECT_TRUE(Rational(5) < big);
}

TEST(Rational, BinomialConvention) {
  EXPECT_EQ(binomial(5, 2), Rational(10));
  EXPECT_EQ(binomial(2, 5), Rational(0));
  EXPECT_EQ(binomial(-1, 0), Rational(0));
  EXPECT_EQ(factorial(5), Rational(120));
}

TEST(Multiply, KnownValues) {
  EXPECT_TRUE((xg(1) * xg(1)).is_zero());
  EXPECT_EQ(xg(2) * xg(1), -(xg(1) * xg(2)));
  EXPECT_EQ((x(1) + xg(1)) * (x(1) - xg(1)), x(1) * x(1));
}

TEST(Multiply, SignMatchesWordOracle) {
  const int n = 3;
  for (std::uint64_t a = 0; a < (1U << (2 * n)); ++a)
    for (std::uint64_t b = 0; b < (1U << (2 * n)); ++b) {
      SuperMonomial ma, mb;
      ma.mask = a;
      mb.mask = b;
      auto wa = mask_word(a);
      auto wb = mask_word(b);
      wa.insert(wa.end(), wb.begin(), wb.end());
      const SuperPolynomial p = SuperPolynomial(ma) * SuperPolynomial(mb);
      SuperMonomial mab;
      mab.mask = a | b;
      ASSERT_EQ(p.coefficient(mab), word_sign(wa)) << a << " " << b;
    }
}

TEST(Multiply, AssociativeAndGradedCommutative) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 3;
    const int n = trial % 3;
    const int pf = static_cast<int>(rng() % 2);
    const int pg = static_cast<int>(rng() % 2);
    const auto f = testutil::random_homogeneous(rng, m, n, static_cast<int>(rng() % 4), 4, n ? pf : 0);
    const auto g = testutil::random_homogeneous(rng, m, n, static_cast<int>(rng() % 3), 4, n ? pg : 0);
    const auto h = testutil::random_polynomial(rng, m, n, 2);
    ASSERT_EQ((f * g) * h, f * (g * h));
    const Rational sign = (f.parity() == 1 && g.parity() == 1) ? Rational(-1) : Rational(1);
    ASSERT_EQ(f * g, sign * (g * f));
  }
}

TEST(Partial, KnownValues) {
  EXPECT_EQ(partial_fermionic(xg(1) * xg(2), 0), xg(2));
  EXPECT_EQ(partial_fermionic(xg(1) * xg(2), 1), -xg(1));
  EXPECT_EQ(partial_bosonic(x(1) * x(1), 0), Rational(2) * x(1));
  EXPECT_THROW(partial(x(1), Variable{false, 3}, 2, 1), std::out_of_range);
  EXPECT_THROW(partial(x(1), Variable{true, 2}, 2, 1), std::out_of_range);
}

TEST(Partial, WordOracle) {
  // Left derivative: move the generator to the front of the word, then drop it.
  const int n = 2;
  for (std::uint64_t a = 0; a < (1U << (2 * n)); ++a)
    for (int j = 0; j < 2 * n; ++j) {
      SuperMonomial ma;
      ma.mask = a;
      const auto d = partial_fermionic(SuperPolynomial(ma), j);
      if (!(a >> j & 1U)) {
        EXPECT_TRUE(d.is_zero());
        continue;
      }
      auto w = mask_word(a);
      const auto pos = std::find(w.begin(), w.end(), j) - w.begin();
      SuperMonomial rest;
      rest.mask = a & ~(std::uint64_t{1} << j);
      EXPECT_EQ(d.coefficient(rest), pos % 2 ? Rational(-1) : Rational(1));
    }
}

TEST(Partial, GradedLeibniz) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 1 + trial % 3;
    const int n = 1 + trial % 2;
    const int pf = static_cast<int>(rng() % 2);
    const auto f = testutil::random_homogeneous(rng, m, n, 1 + static_cast<int>(rng() % 4), 4, pf);
    const auto g = testutil::random_polynomial(rng, m, n, 3);
    for (int i = 0; i < m; ++i)
      ASSERT_EQ(partial_bosonic(f * g, i), partial_bosonic(f, i) * g + f * partial_bosonic(g, i));
    const Rational s = f.parity() == 1 ? Rational(-1) : Rational(1);
    for (int j = 0; j < 2 * n; ++j)
      ASSERT_EQ(partial_fermionic(f * g, j), partial_fermionic(f, j) * g + s * (f * partial_fermionic(g, j)));
  }
}

TEST(Partial, FermionicDerivativesAnticommute) {
  for (int k = 0; k <= 4; ++k)
    for (const auto& mo : monomial_basis(2, 2, k))
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const SuperPolynomial f(mo);
          ASSERT_EQ(partial_fermionic(partial_fermionic(f, j), i), -partial_fermionic(partial_fermionic(f, i), j));
        }
}

TEST(Homogeneous, KnownValues) {
  EXPECT_EQ(homogeneous_component(SuperPolynomial(1) + x(1) + xg(1) * xg(2), 2), xg(1) * xg(2));
  EXPECT_TRUE(homogeneous_component(x(1) * x(1), 1).is_zero());
  const auto R2 = x(1) * x(1) + x(2) * x(2) - xg(1) * xg(2);
  EXPECT_EQ(homogeneous_component(R2, 2), R2);
}

TEST(Homogeneous, ComponentsSumToPolynomial) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testutil::random_polynomial(rng, 2, 2, 6);
    SuperPolynomial s;
    for (int k = 0; k <= 6; ++k) s += homogeneous_component(f, k);
    ASSERT_EQ(s, f);
  }
}

TEST(MonomialBasis, CountsMatchFormula) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 2; ++n)
      for (int k = 0; k <= 6; ++k) {
        Rational expected(0);
        for (int i = 0; i <= std::min(k, 2 * n); ++i) {
          // C(k-i+m-1, m-1), with the m = 0 case counting only degree 0.
          const Rational bos = m == 0 ? Rational(k - i == 0 ? 1 : 0) : binomial(k - i + m - 1, m - 1);
          expected += binomial(2 * n, i) * bos;
        }
        const auto b = monomial_basis(m, n, k);
        ASSERT_EQ(Rational(static_cast<long long>(b.size())), expected) << m << n << k;
        for (const auto& mo : b) ASSERT_EQ(mo.degree(), k);
        for (std::size_t t = 1; t < b.size(); ++t) ASSERT_TRUE(monomial_less(b[t - 1], b[t]));
      }
}

TEST(MonomialBasis, KnownValues) {
  const auto b1 = monomial_basis(1, 0, 3);
  ASSERT_EQ(b1.size(), 1U);
  EXPECT_EQ(to_string(b1[0]), "x1^3");
  const auto b2 = monomial_basis(0, 1, 2);
  ASSERT_EQ(b2.size(), 1U);
  EXPECT_EQ(to_string(b2[0]), "xg1*xg2");
  std::vector<std::string> names;
  for (const auto& mo : monomial_basis(2, 1, 2)) names.push_back(to_string(mo));
  const std::vector<std::string> expected{"x1^2", "x1*x2", "x2^2", "x1*xg1", "x1*xg2", "x2*xg1", "x2*xg2", "xg1*xg2"};
  EXPECT_EQ(names, expected);
}

TEST(Text, RendersAndParses) {
  const auto f = Rational(2) * x(1) * x(1) - xg(1) * xg(2);
  EXPECT_EQ(to_string(f), "2*x1^2 - xg1*xg2");
  EXPECT_EQ(parse_polynomial("2*x1^2 - xg1*xg2", 2, 1), f);
  EXPECT_EQ(parse_polynomial("xg2*xg1", 1, 1), -(xg(1) * xg(2)));
  EXPECT_EQ(parse_polynomial("(x1+xg1)*(x1-xg1)", 1, 1), x(1) * x(1));
  EXPECT_EQ(parse_polynomial("x1/2 - 3/4", 1, 0), Rational(1, 2) * x(1) - Rational(3, 4));
  EXPECT_EQ(parse_polynomial("-x1^2", 1, 0), -(x(1) * x(1)));
  EXPECT_EQ(to_string(SuperPolynomial()), "0");
  EXPECT_THROW(parse_polynomial("x3", 2, 0), ParseError);
  EXPECT_THROW(parse_polynomial("xg3", 2, 1), ParseError);
  EXPECT_THROW(parse_polynomial("x1/x1", 2, 0), ParseError);
  EXPECT_THROW(parse_polynomial("1/0", 2, 0), ParseError);
  EXPECT_THROW(parse_polynomial("x1 +", 2, 0), ParseError);
  EXPECT_THROW(parse_polynomial("(x1", 2, 0), ParseError);
}

TEST(Text, RoundTripRandom) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = testutil::random_polynomial(rng, 3, 2, 5);
    f *= Rational(1, 1 + static_cast<int>(rng() % 7));
    ASSERT_EQ(parse_polynomial(to_string(f), 3, 2), f) << to_string(f);
  }
}
