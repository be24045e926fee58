// Exact rational arithmetic and elementary arithmetic functions.
//
// BigRational is a thin value type over GMP's mpq_class; everything else in
// the library consumes it. Bernoulli numbers are memoized process-wide behind
// a mutex, so all functions here are observably pure.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmf {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  BigRational(const BigInt& v) : q_(v) {}  // NOLINT
  BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("BigRational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p" or "p/q" in base 10.
  static BigRational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return BigRational(BigInt(std::string(text)));
      return BigRational(BigInt(std::string(text.substr(0, slash))),
                         BigInt(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("BigRational: cannot parse '" + std::string(text) + "'");
    }
  }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string str() const { return q_.get_str(); }

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }
  friend bool operator>(const BigRational& a, const BigRational& b) { return a.q_ > b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// ---------------------------------------------------------------------------
// Primality

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the witness set {2..37} is exact below 3.3e24.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const auto u = static_cast<std::uint64_t>(n);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (u % p == 0) return u == p;
  }
  std::uint64_t d = u - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, u);
    if (x == 1 || x == u - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, u);
      if (x == u - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

/// Prime factors (without multiplicity, ascending) of |n| by trial division.
inline std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  n = abs(n);
  if (n < 2) return out;
  for (BigInt d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace detail {

struct BernoulliTable {
  std::mutex mu;
  std::vector<BigRational> values{BigRational(1)};
};

inline BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace detail

/// B_m with B_1 = -1/2, from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline BigRational bernoulli(unsigned m) {
  auto& table = detail::bernoulli_table();
  std::lock_guard lock(table.mu);
  auto& b = table.values;
  while (b.size() <= m) {
    const unsigned n = static_cast<unsigned>(b.size());
    if (n >= 3 && n % 2 == 1) {
      b.emplace_back(0);
      continue;
    }
    BigRational acc(0);
    for (unsigned j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      acc += BigRational(binomial(n + 1, j)) * b[j];
    }
    b.push_back(-acc / BigRational(static_cast<long>(n + 1)));
  }
  return b[m];
}

/// B_m mod p for even m with 2 <= m <= p - 3, via sum_{j<p} j^m = p*B_m (mod p^2).
/// Usable for primes far beyond the reach of the exact recurrence.
inline std::int64_t bernoulli_mod_p(unsigned m, std::int64_t p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("bernoulli_mod_p: p must be a prime >= 5");
  if (m < 2 || m % 2 != 0 || static_cast<std::int64_t>(m) > p - 3)
    throw std::invalid_argument("bernoulli_mod_p: need even m with 2 <= m <= p-3");
  const auto pp = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
  std::uint64_t s = 0;
  for (std::int64_t j = 1; j < p; ++j) {
    s = (s + detail::powmod(static_cast<std::uint64_t>(j), m, pp)) % pp;
  }
  // s is divisible by p; s / p is B_m mod p.
  return static_cast<std::int64_t>((s / static_cast<std::uint64_t>(p)) % static_cast<std::uint64_t>(p));
}

// ---------------------------------------------------------------------------
// Divisor sums

/// sigma_m(n) for a positive machine integer n.
inline BigInt sigma(unsigned m, std::int64_t n) {
  if (n <= 0) return 0;
  BigInt acc = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    acc += pow(BigInt(static_cast<long>(d)), m);
    const std::int64_t e = n / d;
    if (e != d) acc += pow(BigInt(static_cast<long>(e)), m);
  }
  return acc;
}

/// sigma_m(ell) for rational ell; 0 unless ell is a positive integer.
inline BigInt sigma(unsigned m, const BigRational& ell) {
  if (!ell.is_integer() || ell.sign() <= 0) return 0;
  const BigInt n = ell.num();
  if (!n.fits_slong_p()) throw std::out_of_range("sigma: argument too large");
  return sigma(m, static_cast<std::int64_t>(n.get_si()));
}

// ---------------------------------------------------------------------------
// Kronecker symbol

/// Kronecker symbol (a/n) for arbitrary integers a, n.
inline int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // (a/2)
  int v = 0;
  while (n % 2 == 0) { n /= 2; ++v; }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    const std::int64_t r8 = ((a % 8) + 8) % 8;
    if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // n is now odd and positive: Jacobi symbol.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// p-adic valuation

/// Result of ord_p: an integer, or +infinity for zero.
struct Valuation {
  std::optional<long> value;  // nullopt = +infinity

  static Valuation infinity() { return Valuation{std::nullopt}; }
  bool is_infinite() const { return !value.has_value(); }
  /// Compare against a finite bound; infinity exceeds everything.
  bool at_least(long bound) const { return is_infinite() || *value >= bound; }
  bool greater_than(long bound) const { return is_infinite() || *value > bound; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline long ord_p(const BigInt& x, std::int64_t p) {
  if (x == 0) throw std::domain_error("ord_p: zero has infinite valuation");
  BigInt rest;
  const BigInt pp(static_cast<long>(p));
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

/// p-adic valuation of a rational; p must be prime.
inline Valuation ord_p(const BigRational& x, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("ord_p: " + std::to_string(p) + " is not prime");
  if (x.is_zero()) return Valuation::infinity();
  return Valuation{ord_p(x.num(), p) - ord_p(x.den(), p)};
}

/// Residue of a p-integral rational modulo p, in [0, p).
inline std::int64_t residue_mod(const BigRational& x, std::int64_t p) {
  const BigInt pp(static_cast<long>(p));
  BigInt den = x.den();
  if (den % pp == 0) throw std::domain_error("residue_mod: value is not p-integral");
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  BigInt r = (x.num() * inv) % pp;
  if (r < 0) r += pp;
  return r.get_si();
}

}  // namespace qmf
