#include "qmf/exactnum.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace qmf;

namespace {

// Akiyama-Tanigawa: independent of the binomial recurrence. It produces
// B_1 = +1/2, which does not matter for the even indices compared here.
std::vector<BigRational> bernoulli_oracle(unsigned n_max) {
  std::vector<BigRational> out;
  std::vector<BigRational> a(n_max + 1);
  for (unsigned m = 0; m <= n_max; ++m) {
    a[m] = BigRational(1) / BigRational(static_cast<long>(m + 1));
    for (unsigned j = m; j >= 1; --j) a[j - 1] = BigRational(static_cast<long>(j)) * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  return out;
}

bool trial_division_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bernoulli: listed values") {
  CHECK(bernoulli(0) == BigRational(1));
  CHECK(bernoulli(1) == BigRational(-1, 2));
  CHECK(bernoulli(2) == BigRational(1, 6));
  CHECK(bernoulli(12) == BigRational(-691, 2730));
}

TEST_CASE("bernoulli: agrees with Akiyama-Tanigawa on even indices, vanishes on odd") {
  const auto oracle = bernoulli_oracle(40);
  for (unsigned m = 0; m <= 40; ++m) {
    if (m % 2 == 0) {
      CHECK(bernoulli(m) == oracle[m]);
    } else if (m >= 3) {
      CHECK(bernoulli(m).is_zero());
    }
  }
}

TEST_CASE("bernoulli: von Staudt-Clausen, ord_p(B_{p-1}) = -1") {
  for (std::int64_t p = 2; p <= 40; ++p) {
    if (!is_prime(p)) continue;
    INFO("p = " << p);
    const auto v = ord_p(bernoulli(static_cast<unsigned>(p - 1)), p);
    REQUIRE(!v.is_infinite());
    CHECK(*v.value == -1);
  }
}

TEST_CASE("bernoulli_mod_p matches the exact numbers and finds the irregular pairs") {
  for (std::int64_t p = 5; p <= 100; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned m = 2; static_cast<std::int64_t>(m) <= p - 3; m += 2) {
      INFO("p = " << p << ", m = " << m);
      CHECK(bernoulli_mod_p(m, p) == residue_mod(bernoulli(m), p));
    }
  }
  // 37 | B_32 is the first irregular pair.
  CHECK(bernoulli_mod_p(32, 37) == 0);
  CHECK(bernoulli_mod_p(16840, 16843) == 0);
  CHECK_THROWS_AS(bernoulli_mod_p(3, 11), std::invalid_argument);
}

TEST_CASE("sigma: listed values") {
  CHECK(sigma(7, BigRational(2)) == 129);
  CHECK(sigma(11, BigRational(3)) == 177148);
  CHECK(sigma(5, BigRational(1, 2)) == 0);
  CHECK(sigma(3, BigRational(0)) == 0);
  CHECK(sigma(3, BigRational(-4)) == 0);
  CHECK(sigma(3, BigRational(8, 4)) == 9);
}

TEST_CASE("sigma: equals a divisor sieve for l <= 10^4, m <= 13") {
  constexpr int kMax = 10000;
  for (unsigned m = 0; m <= 13; ++m) {
    std::vector<BigInt> sieve(kMax + 1, 0);
    for (int d = 1; d <= kMax; ++d) {
      const BigInt dm = pow(BigInt(d), m);
      for (int mult = d; mult <= kMax; mult += d) sieve[mult] += dm;
    }
    int mismatches = 0;
    for (int ell = 1; ell <= kMax; ++ell) {
      if (sigma(m, ell) != sieve[ell]) ++mismatches;
    }
    INFO("m = " << m);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("kronecker: listed values and conventions") {
  CHECK(kronecker(-23, 5) == -1);
  CHECK(kronecker(-23, 180) == -1);
  CHECK(kronecker(-23, 1) == 1);
  CHECK(kronecker(-23, 23) == 0);
  CHECK(kronecker(-23, 0) == 0);
  CHECK(kronecker(1, 0) == 1);
  CHECK(kronecker(-23, 2) == 1);   // -23 = 1 (mod 8)
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(5, 2) == -1);    // 5 = 5 (mod 8)
  CHECK(kronecker(-1, -1) == -1);
  CHECK(kronecker(3, -1) == 1);
}

TEST_CASE("kronecker(-23, .) is completely multiplicative and matches Euler's criterion") {
  for (std::int64_t a = 1; a <= 1000; ++a) {
    for (std::int64_t b = 1; a * b <= 1000; ++b) {
      REQUIRE(kronecker(-23, a * b) == kronecker(-23, a) * kronecker(-23, b));
    }
  }
  for (std::int64_t n = 1; n <= 1000; ++n) {
    if (n % 23 == 0) continue;
    // (-23/n) = (n/23) by reciprocity; Euler: (n/23) = n^11 mod 23.
    std::int64_t r = 1;
    for (int i = 0; i < 11; ++i) r = r * (n % 23) % 23;
    const int euler = r == 1 ? 1 : -1;
    REQUIRE(r * r % 23 == 1);
    INFO("n = " << n);
    CHECK(kronecker(-23, n) == euler);
  }
}

TEST_CASE("kronecker agrees with the Legendre symbol by enumeration of squares") {
  for (std::int64_t p = 3; p < 200; p += 2) {
    if (!is_prime(p)) continue;
    std::vector<bool> square(static_cast<std::size_t>(p), false);
    for (std::int64_t x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = true;
    for (std::int64_t a = -50; a <= 50; ++a) {
      const std::int64_t r = ((a % p) + p) % p;
      const int legendre = r == 0 ? 0 : (square[static_cast<std::size_t>(r)] ? 1 : -1);
      REQUIRE(kronecker(a, p) == legendre);
    }
  }
}

TEST_CASE("ord_p: listed values and errors") {
  CHECK(*ord_p(BigRational(691), 691).value == 1);
  CHECK(*ord_p(bernoulli(12), 691).value == 1);
  CHECK(*ord_p(BigRational(1, 5), 5).value == -1);
  CHECK(ord_p(BigRational(0), 5).is_infinite());
  CHECK_THROWS_AS(ord_p(BigRational(3), 4), std::invalid_argument);
}

TEST_CASE("ord_p is additive on products") {
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
  for (std::int64_t p : {2, 3, 5, 7, 23, 691}) {
    for (int trial = 0; trial < 300; ++trial) {
      const BigRational x(BigInt(num(rng)), BigInt(den(rng)));
      const BigRational y(BigInt(num(rng)), BigInt(den(rng)));
      if (x.is_zero() || y.is_zero()) continue;
      REQUIRE(*ord_p(x * y, p).value == *ord_p(x, p).value + *ord_p(y, p).value);
    }
  }
}

TEST_CASE("is_prime: listed values and trial-division agreement") {
  CHECK(is_prime(23));
  CHECK_FALSE(is_prime(15));
  CHECK(is_prime(43867));
  CHECK_FALSE(is_prime(561));
  CHECK(is_prime(2305843009213693951LL));  // 2^61 - 1
  CHECK_FALSE(is_prime(-7));
  for (std::int64_t n = -5; n <= 100000; ++n) REQUIRE(is_prime(n) == trial_division_prime(n));
}

TEST_CASE("BigRational: lowest terms, sign and errors") {
  const BigRational r(BigInt(6), BigInt(-4));
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(BigRational::parse("-10/4") == BigRational(-5, 2));
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), std::domain_error);
  CHECK_THROWS_AS(BigRational(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(BigRational::parse("x/2"), std::invalid_argument);
  CHECK(residue_mod(BigRational(1, 3), 7) == 5);
  CHECK_THROWS_AS(residue_mod(BigRational(1, 7), 7), std::domain_error);
}
