// Half-integral quaternionic hermitian index matrices T = [[n, t/2], [conj(t)/2, m]].
#pragma once

#include "qmf/quatlat.hpp"

#include <cstdint>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmf {

struct TMatrix {
  std::int64_t n = 0;
  std::int64_t m = 0;
  QuatCoord t{};

  /// Ordering used everywhere: n, then m, then t lexicographically.
  friend auto operator<=>(const TMatrix&, const TMatrix&) = default;

  bool is_zero() const { return n == 0 && m == 0 && t.is_zero(); }
  TMatrix operator+(const TMatrix& o) const { return {n + o.n, m + o.m, t + o.t}; }
  TMatrix operator-(const TMatrix& o) const { return {n - o.n, m - o.m, t - o.t}; }
  TMatrix operator*(std::int64_t s) const { return {n * s, m * s, t * s}; }
};

/// 2 det(T) = 2nm - norm(t)/2.
inline std::int64_t two_det(const TMatrix& T) { return 2 * T.n * T.m - norm(T.t) / 2; }

inline bool is_psd(const TMatrix& T) {
  if (T.n < 0 || T.m < 0 || two_det(T) < 0) return false;
  if ((T.n == 0 || T.m == 0) && !T.t.is_zero()) return false;
  return true;
}

/// Largest d with T/d again a valid index matrix.
inline std::int64_t epsilon(const TMatrix& T) {
  if (T.is_zero()) throw std::domain_error("epsilon: undefined for T = 0");
  std::int64_t g = 0;
  for (std::int64_t v : {T.n, T.m, T.t.a, T.t.b, T.t.c, T.t.d}) g = std::gcd(g, v);
  std::int64_t best = 1;
  for (std::int64_t d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    for (std::int64_t cand : {d, g / d}) {
      if (cand > best) {
        const QuatCoord q{T.t.a / cand, T.t.b / cand, T.t.c / cand, T.t.d / cand};
        if (in_dual(q)) best = cand;
      }
    }
  }
  return best;
}

inline int rank(const TMatrix& T) {
  if (!is_psd(T)) throw std::domain_error("rank: T is not positive semidefinite");
  if (T.is_zero()) return 0;
  return two_det(T) > 0 ? 2 : 1;
}

inline std::string to_string(const TMatrix& T) {
  return std::to_string(T.n) + "," + std::to_string(T.m) + "," + to_string(T.t);
}

/// Parses "n,m,a,b,c,d"; rejects t outside the dual lattice.
inline TMatrix parse_tmatrix(std::string_view text) {
  const auto v = detail::parse_int_list(text);
  if (v.size() != 6) throw std::invalid_argument("T needs 6 integers n,m,a,b,c,d: '" + std::string(text) + "'");
  TMatrix T{v[0], v[1], {v[2], v[3], v[4], v[5]}};
  if (!in_dual(T.t)) throw std::invalid_argument("t = " + to_string(T.t) + " is not in the dual lattice");
  return T;
}

/// All psd T with 0 <= n, m <= depth, ordered by (n, m, t).
inline std::vector<TMatrix> enumerate_psd(std::int64_t depth) {
  std::vector<TMatrix> out;
  for (std::int64_t n = 0; n <= depth; ++n) {
    for (std::int64_t m = 0; m <= depth; ++m) {
      if (n == 0 || m == 0) {
        out.push_back({n, m, {}});
        continue;
      }
      for (const QuatCoord& t : enumerate_dual(4 * n * m)) out.push_back({n, m, t});
    }
  }
  return out;
}

/// Indexed truncation box {psd T : n, m <= depth}.
///
/// Entries are stored in enumerate_psd order and grouped into (n, m) blocks.
/// Each block owns a dense lookup table over t in [-r, r]^4 with
/// r = floor(2 sqrt(nm)), which bounds every coordinate of a psd t.
class PsdBox {
 public:
  struct Block {
    std::int64_t n = 0, m = 0;
    std::size_t begin = 0, end = 0;  // entry range
    std::int64_t radius = 0;
    std::vector<std::int32_t> lookup;  // dense t -> entry index, -1 if absent

    std::size_t size() const { return end - begin; }
  };

  explicit PsdBox(std::int64_t depth) : depth_(depth) {
    if (depth < 0) throw std::invalid_argument("PsdBox: depth must be nonnegative");
    entries_ = enumerate_psd(depth);
    blocks_.resize(static_cast<std::size_t>((depth + 1) * (depth + 1)));
    std::size_t i = 0;
    for (std::int64_t n = 0; n <= depth; ++n) {
      for (std::int64_t m = 0; m <= depth; ++m) {
        Block& b = blocks_[block_id(n, m)];
        b.n = n;
        b.m = m;
        b.begin = i;
        while (i < entries_.size() && entries_[i].n == n && entries_[i].m == m) ++i;
        b.end = i;
        std::int64_t r = 0;
        while ((r + 1) * (r + 1) <= 4 * n * m) ++r;
        b.radius = r;
        const std::int64_t side = 2 * r + 1;
        b.lookup.assign(static_cast<std::size_t>(side * side * side * side), -1);
        for (std::size_t j = b.begin; j < b.end; ++j) {
          b.lookup[slot(b, entries_[j].t)] = static_cast<std::int32_t>(j);
        }
      }
    }
  }

  std::int64_t depth() const { return depth_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<TMatrix>& entries() const { return entries_; }
  const TMatrix& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::int64_t n, std::int64_t m) const { return blocks_[block_id(n, m)]; }

  /// Entry index of T, or -1 if T is outside the box or not psd.
  std::int64_t find(const TMatrix& T) const {
    if (T.n < 0 || T.m < 0 || T.n > depth_ || T.m > depth_) return -1;
    const Block& b = blocks_[block_id(T.n, T.m)];
    return find_in(b, T.t);
  }

  static std::int64_t find_in(const Block& b, const QuatCoord& t) {
    for (std::int64_t v : {t.a, t.b, t.c, t.d}) {
      if (v < -b.radius || v > b.radius) return -1;
    }
    return b.lookup[slot(b, t)];
  }

  static std::size_t slot(const Block& b, const QuatCoord& t) {
    const std::int64_t side = 2 * b.radius + 1;
    const std::int64_t r = b.radius;
    return static_cast<std::size_t>((((t.a + r) * side + (t.b + r)) * side + (t.c + r)) * side + (t.d + r));
  }

  /// Shared, memoized instance per depth.
  static std::shared_ptr<const PsdBox> get(std::int64_t depth);

 private:
  std::size_t block_id(std::int64_t n, std::int64_t m) const {
    return static_cast<std::size_t>(n * (depth_ + 1) + m);
  }

  std::int64_t depth_;
  std::vector<TMatrix> entries_;
  std::vector<Block> blocks_;
};

inline std::shared_ptr<const PsdBox> PsdBox::get(std::int64_t depth) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const PsdBox>> cache;
  std::lock_guard lock(mu);
  auto& box = cache[depth];
  if (!box) box = std::make_shared<const PsdBox>(depth);
  return box;
}

}  // namespace qmf
