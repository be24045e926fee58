// Quaternion coordinates and the dual lattice of the Hurwitz order.
//
// A QuatCoord (a,b,c,d) stands for a + b*i + c*j + d*k. The dual lattice is
// spanned by 2, 1+i, 1+j, 1+k, so membership is the parity condition
// a + b + c + d even. Hurwitz quaternions themselves never get multiplied
// anywhere in the library, so only the dual lattice is modelled.
#pragma once

#include <array>
#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmf {

struct QuatCoord {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  friend auto operator<=>(const QuatCoord&, const QuatCoord&) = default;

  QuatCoord operator+(const QuatCoord& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  QuatCoord operator-(const QuatCoord& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  QuatCoord operator-() const { return {-a, -b, -c, -d}; }
  QuatCoord operator*(std::int64_t s) const { return {a * s, b * s, c * s, d * s}; }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  std::array<std::int64_t, 4> coords() const { return {a, b, c, d}; }
};

/// Reduced norm a^2 + b^2 + c^2 + d^2.
inline std::int64_t norm(const QuatCoord& t) { return t.a * t.a + t.b * t.b + t.c * t.c + t.d * t.d; }

inline QuatCoord conj(const QuatCoord& t) { return {t.a, -t.b, -t.c, -t.d}; }

inline bool in_dual(const QuatCoord& t) { return ((t.a + t.b + t.c + t.d) & 1) == 0; }

/// Every t in the dual lattice with norm(t) <= radius_sq, lexicographic in (a,b,c,d).
inline std::vector<QuatCoord> enumerate_dual(std::int64_t radius_sq) {
  std::vector<QuatCoord> out;
  if (radius_sq < 0) return out;
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= radius_sq) ++r;
  for (std::int64_t a = -r; a <= r; ++a) {
    const std::int64_t ra = radius_sq - a * a;
    for (std::int64_t b = -r; b <= r; ++b) {
      const std::int64_t rb = ra - b * b;
      if (rb < 0) continue;
      for (std::int64_t c = -r; c <= r; ++c) {
        const std::int64_t rc = rb - c * c;
        if (rc < 0) continue;
        for (std::int64_t d = -r; d <= r; ++d) {
          if (d * d > rc) continue;
          QuatCoord t{a, b, c, d};
          if (in_dual(t)) out.push_back(t);
        }
      }
    }
  }
  return out;
}

inline std::string to_string(const QuatCoord& t) {
  return std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "," +
         std::to_string(t.d);
}

namespace detail {

/// Splits a comma-separated list of integers; throws std::invalid_argument on junk.
inline std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string field(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    while (!field.empty() && field.back() == ' ') field.pop_back();
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + field + "'");
    }
    if (used != field.size()) throw std::invalid_argument("not an integer: '" + field + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Parses "a,b,c,d"; rejects coordinates outside the dual lattice.
inline QuatCoord parse_quat(std::string_view text) {
  const auto v = detail::parse_int_list(text);
  if (v.size() != 4) throw std::invalid_argument("quaternion needs 4 coordinates: '" + std::string(text) + "'");
  QuatCoord t{v[0], v[1], v[2], v[3]};
  if (!in_dual(t)) throw std::invalid_argument("quaternion " + to_string(t) + " is not in the dual lattice");
  return t;
}

}  // namespace qmf
