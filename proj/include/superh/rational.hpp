#pragma once

// Exact rational numbers.
//
// Values that fit in a reduced int64 fraction are kept inline and combined
// through __int128 intermediates; anything larger is promoted to a GMP
// mpq_class and demoted again as soon as it fits.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superh {

class Rational {
 public:
  Rational() noexcept = default;
  Rational(int v) noexcept : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) noexcept : num_(v) { if (v == kMin) promote_raw(v, 1); }  // NOLINT
  Rational(long long v) noexcept : num_(v) { if (v == kMin) promote_raw(v, 1); }  // NOLINT

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    assign128(num, den);
  }

  explicit Rational(const mpq_class& q) { assign_big(mpq_class(q)); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses "a", "-a" or "a/b" (decimal integers of any length).
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational: empty literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    Rational r;
    r.assign_big(std::move(q));
    return r;
  }

  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_integer() const noexcept {
    return big_ ? big_->get_den() == 1 : den_ == 1;
  }
  [[nodiscard]] int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  [[nodiscard]] mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_from(num_), mpz_from(den_));
    return q;
  }
  [[nodiscard]] mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_from(num_); }
  [[nodiscard]] mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_from(den_); }

  /// Exact value as a machine integer; throws if not an integer or out of range.
  [[nodiscard]] std::int64_t to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("Rational: not a small integer: " + str());
    return num_;
  }

  [[nodiscard]] std::string str() const {
    if (big_) return big_->get_str(10);
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r(*this);
    r.negate();
    return r;
  }
  void negate() {
    if (big_) {
      *big_ = -*big_;
    } else {
      num_ = -num_;  // num_ != INT64_MIN by invariant
    }
  }

  [[nodiscard]] Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    if (big_) return Rational(mpq_class(1) / *big_);
    Rational r;
    r.assign128(den_, num_);
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (den_ == 1 && o.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(num_, o.num_, &s) && s != kMin) {
          num_ = s;
          return *this;
        }
      }
      const __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
      const __int128 d = static_cast<__int128>(den_) * o.den_;
      assign128(n, d);
      return *this;
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (den_ == 1 && o.den_ == 1) {
        std::int64_t s;
        if (!__builtin_sub_overflow(num_, o.num_, &s) && s != kMin) {
          num_ = s;
          return *this;
        }
      }
      const __int128 n = static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_;
      const __int128 d = static_cast<__int128>(den_) * o.den_;
      assign128(n, d);
      return *this;
    }
    assign_big(to_mpq() - o.to_mpq());
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (num_ == 0 || o.num_ == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
      }
      // Cross-cancel first so the products are already reduced.
      const std::int64_t g1 = std::gcd(num_, o.den_);
      const std::int64_t g2 = std::gcd(o.num_, den_);
      const __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
      const __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
      if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
      } else {
        promote128(n, d);
      }
      return *this;
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
  }
  Rational& operator/=(const Rational& o) { return *this *= o.inverse(); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: big values never fit inline
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 l = static_cast<__int128>(a.num_) * b.den_;
      const __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;  // engaged iff the value does not fit inline

  static bool fits(__int128 v) noexcept { return v <= kMax && v > kMin; }

  static mpz_class mpz_from(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
  }
  static mpz_class mpz_from128(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi;
    mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
    mpz_class lo;
    mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class z = (hi << 64) + lo;
    return neg ? mpz_class(-z) : z;
  }

  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) noexcept {
    if (a <= 0xFFFFFFFFFFFFFFFFULL && b <= 0xFFFFFFFFFFFFFFFFULL)
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
      const unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    const unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    const unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      promote128(n, d);
    }
  }

  void promote128(__int128 n, __int128 d) {
    mpq_class q(mpz_from128(n), mpz_from128(d));
    q.canonicalize();
    assign_big(std::move(q));
  }
  void promote_raw(std::int64_t n, std::int64_t d) {
    mpq_class q(mpz_from(n), mpz_from(d));
    q.canonicalize();
    assign_big(std::move(q));
  }

  void assign_big(mpq_class q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != kMin) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
      return;
    }
    num_ = 0;
    den_ = 1;
    if (big_) {
      *big_ = std::move(q);
    } else {
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }
};

/// Binomial coefficient C(a, b) with C(a, b) = 0 whenever a < 0, b < 0 or a < b.
inline Rational binomial(long long a, long long b) {
  if (a < 0 || b < 0 || a < b) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return Rational(mpq_class(r));
}

inline Rational factorial(long long n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(r));
}

}  // namespace superh
