#include "qmf/quatlat.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

using namespace qmf;

namespace {

// Naive scan of the full integer box with the parity filter.
std::vector<QuatCoord> box_scan(std::int64_t radius_sq) {
  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(radius_sq))) + 1;
  std::vector<QuatCoord> out;
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b)
      for (std::int64_t c = -r; c <= r; ++c)
        for (std::int64_t d = -r; d <= r; ++d) {
          if ((a + b + c + d) % 2 != 0) continue;
          if (a * a + b * b + c * c + d * d <= radius_sq) out.push_back({a, b, c, d});
        }
  return out;
}

std::int64_t odd_divisor_sum(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; d += 2) {
    if (n % d == 0) s += d;
  }
  return s;
}

}  // namespace

TEST_CASE("norm, conj and membership: listed values") {
  CHECK(norm({1, 1, 0, 0}) == 2);
  CHECK(norm({0, 0, 0, 0}) == 0);
  CHECK(norm({2, 0, 0, 0}) == 4);

  CHECK(conj({1, 1, 0, 0}) == QuatCoord{1, -1, 0, 0});
  CHECK(conj({5, 0, 0, 0}) == QuatCoord{5, 0, 0, 0});
  CHECK(conj({0, 1, 2, 3}) == QuatCoord{0, -1, -2, -3});

  CHECK(in_dual({1, 1, 0, 0}));
  CHECK_FALSE(in_dual({1, 0, 0, 0}));
  CHECK(in_dual({0, 0, 0, 0}));
}

TEST_CASE("enumerate_dual: small radii") {
  CHECK(enumerate_dual(0) == std::vector<QuatCoord>{{0, 0, 0, 0}});
  CHECK(enumerate_dual(1) == std::vector<QuatCoord>{{0, 0, 0, 0}});
  const auto two = enumerate_dual(2);
  CHECK(two.size() == 25);
  CHECK(std::is_sorted(two.begin(), two.end()));
}

TEST_CASE("enumerate_dual equals a naive box scan for R <= 100") {
  for (std::int64_t R = 0; R <= 100; ++R) {
    INFO("R = " << R);
    REQUIRE(enumerate_dual(R) == box_scan(R));
  }
}

TEST_CASE("shell counts: two scans agree and match 24 * (sum of odd divisors)") {
  std::map<std::int64_t, std::int64_t> from_enum, from_scan;
  for (const auto& t : enumerate_dual(40)) ++from_enum[norm(t)];
  for (const auto& t : box_scan(40)) ++from_scan[norm(t)];
  for (std::int64_t n = 1; n <= 20; ++n) {
    INFO("norm " << 2 * n);
    CHECK(from_enum[2 * n] == from_scan[2 * n]);
    CHECK(from_enum[2 * n] == 24 * odd_divisor_sum(n));
  }
  // Norms are even on the dual lattice.
  for (const auto& [nrm, count] : from_enum) CHECK(nrm % 2 == 0);
}

TEST_CASE("dual lattice is closed under addition, negation and conjugation") {
  const auto pts = enumerate_dual(24);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    const QuatCoord x = pts[pick(rng)], y = pts[pick(rng)];
    REQUIRE(in_dual(x + y));
    REQUIRE(in_dual(-x));
    REQUIRE(in_dual(conj(x)));
    REQUIRE(norm(x) % 2 == 0);
    REQUIRE(norm(conj(x)) == norm(x));
  }
}

TEST_CASE("parse_quat") {
  CHECK(parse_quat("1,1,0,0") == QuatCoord{1, 1, 0, 0});
  CHECK(parse_quat(" -2, 0, 0, 0") == QuatCoord{-2, 0, 0, 0});
  CHECK_THROWS_AS(parse_quat("1,0,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quat("1,1,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quat("1,1,0,x"), std::invalid_argument);
  CHECK(to_string(QuatCoord{3, -1, 0, 2}) == "3,-1,0,2");
}
