// Elliptic modular forms as truncated q-expansions.
#pragma once

#include "qmf/exactnum.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qmf {

inline constexpr int kDefaultEllipticPrecision = 64;

/// Truncated q-expansion sum_{n <= prec} c_n q^n of a given weight.
class QSeries {
 public:
  QSeries() = default;
  QSeries(int weight, std::vector<BigRational> coeffs) : weight_(weight), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("QSeries: need at least the constant term");
  }
  /// Zero series.
  QSeries(int weight, int prec) : weight_(weight), coeffs_(static_cast<std::size_t>(prec + 1)) {
    if (prec < 0) throw std::invalid_argument("QSeries: negative precision");
  }

  int weight() const { return weight_; }
  int prec() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  const BigRational& operator[](int n) const {
    if (n < 0 || n > prec()) throw std::out_of_range("QSeries: q^" + std::to_string(n) + " beyond precision");
    return coeffs_[static_cast<std::size_t>(n)];
  }
  BigRational& operator[](int n) {
    if (n < 0 || n > prec()) throw std::out_of_range("QSeries: q^" + std::to_string(n) + " beyond precision");
    return coeffs_[static_cast<std::size_t>(n)];
  }

  /// Drops terms beyond the given precision.
  QSeries truncated(int prec) const {
    if (prec > this->prec()) throw std::out_of_range("QSeries: cannot extend precision by truncation");
    return QSeries(weight_, std::vector<BigRational>(coeffs_.begin(), coeffs_.begin() + prec + 1));
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.weight_ == b.weight_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int weight_ = 0;
  std::vector<BigRational> coeffs_{BigRational(0)};
};

inline QSeries one_like(const QSeries& f) {
  QSeries r(0, f.prec());
  r[0] = 1;
  return r;
}

inline QSeries add(const QSeries& f, const QSeries& g) {
  if (f.weight() != g.weight()) throw std::invalid_argument("QSeries add: weight mismatch");
  const int prec = std::min(f.prec(), g.prec());
  QSeries r(f.weight(), prec);
  for (int n = 0; n <= prec; ++n) r[n] = f[n] + g[n];
  return r;
}

inline QSeries scale(const BigRational& c, const QSeries& f) {
  QSeries r(f.weight(), f.prec());
  for (int n = 0; n <= f.prec(); ++n) r[n] = c * f[n];
  return r;
}

inline QSeries mul(const QSeries& f, const QSeries& g) {
  const int prec = std::min(f.prec(), g.prec());
  QSeries r(f.weight() + g.weight(), prec);
  for (int i = 0; i <= prec; ++i) {
    if (f[i].is_zero()) continue;
    for (int j = 0; i + j <= prec; ++j) r[i + j] += f[i] * g[j];
  }
  return r;
}

/// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n.
inline QSeries eisenstein_q(int k, int prec = kDefaultEllipticPrecision) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein_q: weight must be even and >= 4");
  QSeries r(k, prec);
  r[0] = 1;
  const BigRational lead = -BigRational(2L * k) / bernoulli(static_cast<unsigned>(k));
  for (int n = 1; n <= prec; ++n) r[n] = lead * BigRational(sigma(static_cast<unsigned>(k - 1), n));
  return r;
}

/// G_k = -(B_k / 2k) E_k, normalized so that the q^1 coefficient is 1.
inline QSeries g_q(int k, int prec = kDefaultEllipticPrecision) {
  return scale(-bernoulli(static_cast<unsigned>(k)) / BigRational(2L * k), eisenstein_q(k, prec));
}

namespace detail {

/// q * prod_{n>=1} (1 - q^n)^24 through q^prec, by repeated multiplication.
inline std::vector<BigInt> delta_coefficients(int prec) {
  // poly holds prod (1 - q^n)^24 through q^(prec-1).
  const int len = std::max(prec, 1);
  std::vector<BigInt> poly(static_cast<std::size_t>(len), 0);
  poly[0] = 1;
  for (int n = 1; n < len; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = len - 1; i >= n; --i) poly[static_cast<std::size_t>(i)] -= poly[static_cast<std::size_t>(i - n)];
    }
  }
  std::vector<BigInt> out(static_cast<std::size_t>(prec + 1), 0);
  for (int i = 1; i <= prec; ++i) out[static_cast<std::size_t>(i)] = poly[static_cast<std::size_t>(i - 1)];
  return out;
}

struct TauTable {
  std::mutex mu;
  std::vector<BigInt> values{0};
};

inline TauTable& tau_table() {
  static TauTable table;
  return table;
}

}  // namespace detail

/// Ramanujan tau(n), memoized; grows the table on demand.
inline BigInt tau(std::int64_t n) {
  if (n < 1) throw std::out_of_range("tau: argument must be positive");
  auto& table = detail::tau_table();
  std::lock_guard lock(table.mu);
  if (static_cast<std::size_t>(n) >= table.values.size()) {
    int prec = std::max<int>(kDefaultEllipticPrecision, static_cast<int>(table.values.size()) * 2);
    while (prec < n) prec *= 2;
    table.values = detail::delta_coefficients(prec);
  }
  return table.values[static_cast<std::size_t>(n)];
}

/// Snapshot of the memoized tau table (index 0 holds 0).
inline std::vector<BigInt> tau_snapshot() {
  auto& table = detail::tau_table();
  std::lock_guard lock(table.mu);
  return table.values;
}

/// Seeds the tau table, e.g. from a persisted cache. Only extends, never shrinks.
inline void seed_tau(std::vector<BigInt> values) {
  auto& table = detail::tau_table();
  std::lock_guard lock(table.mu);
  if (values.size() > table.values.size()) table.values = std::move(values);
}

inline QSeries delta_q(int prec = kDefaultEllipticPrecision) {
  QSeries r(12, prec);
  for (int n = 1; n <= prec; ++n) r[n] = BigRational(tau(n));
  return r;
}

/// tau*(l) = tau(l) - 2^12 tau(l/4), with tau of a non-integer equal to 0.
inline BigInt tau_star(std::int64_t ell) {
  if (ell < 1) throw std::out_of_range("tau_star: argument must be positive");
  BigInt r = tau(ell);
  if (ell % 4 == 0) r -= BigInt(4096) * tau(ell / 4);
  return r;
}

// ---------------------------------------------------------------------------
// Expressing a form as a polynomial in E4 and E6

/// c * E4^a * E6^b.
struct MonomialTerm {
  int a = 0;
  int b = 0;
  BigRational coeff;

  friend bool operator==(const MonomialTerm&, const MonomialTerm&) = default;
};

/// Exponent pairs (a, b) with 4a + 6b = k, a descending.
inline std::vector<std::pair<int, int>> e4_e6_monomials(int k) {
  std::vector<std::pair<int, int>> out;
  if (k < 0 || k % 2 != 0) return out;
  for (int a = k / 4; a >= 0; --a) {
    const int rest = k - 4 * a;
    if (rest % 6 == 0) out.emplace_back(a, rest / 6);
  }
  return out;
}

/// Evaluates sum c * X^a * Y^b in any ring providing mul, add, scale and one_like.
template <class Ring>
Ring evaluate_e4_e6(const std::vector<MonomialTerm>& terms, const Ring& e4, const Ring& e6) {
  if (terms.empty()) throw std::invalid_argument("evaluate_e4_e6: empty polynomial");
  std::map<int, Ring> e4_pow, e6_pow;
  // Powers are cached from exponent 1 upward; exponent 0 is handled by the caller.
  auto power = [](std::map<int, Ring>& cache, const Ring& base, int e) -> const Ring& {
    if (cache.empty()) cache.emplace(1, base);
    for (int i = static_cast<int>(cache.size()) + 1; i <= e; ++i) cache.emplace(i, mul(cache.at(i - 1), base));
    return cache.at(e);
  };
  std::optional<Ring> acc;
  for (const auto& term : terms) {
    Ring mono = term.a == 0 && term.b == 0 ? one_like(e4)
                : term.b == 0              ? power(e4_pow, e4, term.a)
                : term.a == 0              ? power(e6_pow, e6, term.b)
                                           : mul(power(e4_pow, e4, term.a), power(e6_pow, e6, term.b));
    Ring part = scale(term.coeff, mono);
    acc = acc ? add(*acc, part) : std::move(part);
  }
  return *acc;
}

/// Solves f = sum c_{a,b} E4^a E6^b exactly. Throws std::domain_error if f is
/// not in the span of the weight-k monomials to its full precision.
inline std::vector<MonomialTerm> express_in_e4_e6(const QSeries& f) {
  const auto monos = e4_e6_monomials(f.weight());
  if (monos.empty()) throw std::domain_error("express_in_e4_e6: no modular forms of weight " + std::to_string(f.weight()));
  const int dim = static_cast<int>(monos.size());
  if (f.prec() + 1 < dim) throw std::domain_error("express_in_e4_e6: precision below the space dimension");

  const QSeries e4 = eisenstein_q(4, f.prec());
  const QSeries e6 = eisenstein_q(6, f.prec());
  std::vector<QSeries> basis;
  for (auto [a, b] : monos) basis.push_back(evaluate_e4_e6<QSeries>({{a, b, BigRational(1)}}, e4, e6));

  // Augmented system on the first dim q-coefficients, exact Gauss-Jordan.
  std::vector<std::vector<BigRational>> mat(static_cast<std::size_t>(dim), std::vector<BigRational>(static_cast<std::size_t>(dim + 1)));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) mat[i][j] = basis[j][i];
    mat[i][dim] = f[i];
  }
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    while (piv < dim && mat[piv][col].is_zero()) ++piv;
    if (piv == dim) throw std::logic_error("express_in_e4_e6: singular monomial matrix");
    std::swap(mat[piv], mat[col]);
    const BigRational inv = BigRational(1) / mat[col][col];
    for (auto& v : mat[col]) v *= inv;
    for (int r = 0; r < dim; ++r) {
      if (r == col || mat[r][col].is_zero()) continue;
      const BigRational factor = mat[r][col];
      for (int c = col; c <= dim; ++c) mat[r][c] -= factor * mat[col][c];
    }
  }

  std::vector<MonomialTerm> terms;
  for (int j = 0; j < dim; ++j) terms.push_back({monos[j].first, monos[j].second, mat[j][dim]});

  const QSeries back = evaluate_e4_e6(terms, e4, e6);
  for (int n = 0; n <= f.prec(); ++n) {
    if (!(back[n] == f[n])) {
      throw std::domain_error("express_in_e4_e6: not a modular form of weight " + std::to_string(f.weight()) +
                              " (mismatch at q^" + std::to_string(n) + ")");
    }
  }
  return terms;
}

}  // namespace qmf
