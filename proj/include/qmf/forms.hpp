// Named quaternionic modular forms of degree 2 and the Maass lift.
#pragma once

#include "qmf/exactnum.hpp"
#include "qmf/fexp.hpp"
#include "qmf/series.hpp"
#include "qmf/tmat.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace qmf {

inline constexpr std::int64_t kDefaultDepth = 3;

/// Singular series l -> a*(l) of a Maass-space form.
using SingularSeries = std::function<BigRational(std::int64_t)>;

namespace detail {

inline void check_eisenstein_weight(int k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 4, got " + std::to_string(k));
}

}  // namespace detail

inline BigInt pow2_minus_one(int e) { return pow2(static_cast<unsigned long>(e)) - 1; }

/// sigma_{k-3}(l) - 2^{k-2} sigma_{k-3}(l/4) for l >= 1.
inline BigInt eisenstein_divisor_part(int k, std::int64_t ell) {
  BigInt r = sigma(static_cast<unsigned>(k - 3), ell);
  if (ell % 4 == 0) r -= pow2(static_cast<unsigned long>(k - 2)) * sigma(static_cast<unsigned>(k - 3), ell / 4);
  return r;
}

/// a_k^*(l) for the normalized Eisenstein series E_{k,H}.
inline BigRational astar_eisenstein(int k, std::int64_t ell) {
  detail::check_eisenstein_weight(k);
  const BigRational bk = bernoulli(static_cast<unsigned>(k));
  if (ell == 0) return -BigRational(2L * k) / bk;
  const BigRational bk2 = bernoulli(static_cast<unsigned>(k - 2));
  const BigRational lead =
      -BigRational(4L * k * (k - 2)) / (BigRational(pow2_minus_one(k - 2)) * bk * bk2);
  return lead * BigRational(eisenstein_divisor_part(k, ell));
}

/// b_k^*(l) for G_{k,H}.
inline BigRational bstar_eisenstein(int k, std::int64_t ell) {
  detail::check_eisenstein_weight(k);
  if (ell == 0) {
    return BigRational(pow2_minus_one(k - 2)) * bernoulli(static_cast<unsigned>(k - 2)) /
           BigRational(2L * (k - 2));
  }
  return BigRational(eisenstein_divisor_part(k, ell));
}

/// Normalizing factor c_k with G_{k,H} = c_k E_{k,H}; also a(G_{k,H}; 0).
inline BigRational g_constant(int k) {
  detail::check_eisenstein_weight(k);
  const BigRational num = BigRational(pow2_minus_one(k - 2)) *
                          bernoulli(static_cast<unsigned>(k)) * bernoulli(static_cast<unsigned>(k - 2));
  return -num / BigRational(4L * k * (k - 2));
}

/// sum_{d | eps(T)} d^{k-1} a*(2det(T)/d^2) for T != 0.
inline BigRational maass_coefficient(const SingularSeries& astar, int k, const TMatrix& T) {
  const std::int64_t eps = epsilon(T);
  const std::int64_t td = two_det(T);
  BigRational acc(0);
  for (std::int64_t d = 1; d <= eps; ++d) {
    if (eps % d != 0) continue;
    const BigRational val = astar(td / (d * d));
    if (val.is_zero()) continue;
    acc += BigRational(pow(BigInt(static_cast<long>(d)), static_cast<unsigned long>(k - 1))) * val;
  }
  return acc;
}

/// Maass-space expansion with singular series astar; the constant term is
/// not determined by astar and is passed separately.
inline FourierExpansion maass_lift(const SingularSeries& astar, int k, std::int64_t depth,
                                   const BigRational& constant = BigRational(0)) {
  FourierExpansion f(k, depth);
  std::unordered_map<std::int64_t, BigRational> memo;
  const SingularSeries cached = [&](std::int64_t ell) {
    auto it = memo.find(ell);
    if (it == memo.end()) it = memo.emplace(ell, astar(ell)).first;
    return it->second;
  };
  f.at(0) = constant;
  for (std::size_t i = 1; i < f.size(); ++i) f.at(i) = maass_coefficient(cached, k, f.box()[i]);
  return f;
}

/// a(E_{k,H}; T) directly from the closed formula.
inline BigRational eisenstein_h_coeff(int k, const TMatrix& T) {
  detail::check_eisenstein_weight(k);
  if (!is_psd(T)) return BigRational(0);
  if (T.is_zero()) return BigRational(1);
  return maass_coefficient([k](std::int64_t l) { return astar_eisenstein(k, l); }, k, T);
}

/// a(G_{k,H}; T) directly from the closed formula.
inline BigRational g_h_coeff(int k, const TMatrix& T) {
  detail::check_eisenstein_weight(k);
  if (!is_psd(T)) return BigRational(0);
  if (T.is_zero()) return g_constant(k);
  return maass_coefficient([k](std::int64_t l) { return bstar_eisenstein(k, l); }, k, T);
}

inline FourierExpansion eisenstein_h(int k, std::int64_t depth = kDefaultDepth) {
  detail::check_eisenstein_weight(k);
  return maass_lift([k](std::int64_t l) { return astar_eisenstein(k, l); }, k, depth, BigRational(1));
}

inline FourierExpansion g_h(int k, std::int64_t depth = kDefaultDepth) {
  detail::check_eisenstein_weight(k);
  return maass_lift([k](std::int64_t l) { return bstar_eisenstein(k, l); }, k, depth, g_constant(k));
}

/// G_{k,H} restricted to the diagonal (n, 0): a q-series of any precision.
inline QSeries g_h_phi(int k, int prec) {
  QSeries r(k, prec);
  r[0] = g_constant(k);
  const BigRational b0 = bstar_eisenstein(k, 0);
  for (int n = 1; n <= prec; ++n) r[n] = b0 * BigRational(sigma(static_cast<unsigned>(k - 1), n));
  return r;
}

namespace detail {

/// Process-wide memo for the ring-built cusp forms, keyed by (name, depth).
class FormMemo {
 public:
  static FormMemo& instance() {
    static FormMemo memo;
    return memo;
  }

  std::optional<FourierExpansion> find(const std::string& name, std::int64_t depth) {
    std::lock_guard lock(mu_);
    auto it = table_.find({name, depth});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  /// First insertion wins, so concurrent builders agree on one value.
  FourierExpansion insert(const std::string& name, std::int64_t depth, FourierExpansion f) {
    std::lock_guard lock(mu_);
    return table_.try_emplace({name, depth}, std::move(f)).first->second;
  }

  template <class Build>
  FourierExpansion get_or_build(const std::string& name, std::int64_t depth, Build&& build) {
    if (auto hit = find(name, depth)) return *hit;
    return insert(name, depth, build());
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::string, std::int64_t>, FourierExpansion> table_;
};

}  // namespace detail

/// Memoized ring-built form, if one exists for (name, depth).
inline std::optional<FourierExpansion> memoized_form(const std::string& name, std::int64_t depth) {
  return detail::FormMemo::instance().find(name, depth);
}

/// Installs a precomputed form into the memo (e.g. from a disk cache).
inline void seed_form(const std::string& name, std::int64_t depth, FourierExpansion f) {
  detail::FormMemo::instance().insert(name, depth, std::move(f));
}

/// X10 = 17/161280 (E4 E6 - E10).
inline FourierExpansion x10(std::int64_t depth = kDefaultDepth) {
  return detail::FormMemo::instance().get_or_build("X10", depth, [depth] {
    const FourierExpansion prod = mul(eisenstein_h(4, depth), eisenstein_h(6, depth));
    return scale(BigRational(17, 161280), sub(prod, eisenstein_h(10, depth)));
  });
}

/// X12 = 21421/203212800 (441/691 E4^3 + 250/691 E6^2 - E12).
inline FourierExpansion x12(std::int64_t depth = kDefaultDepth) {
  return detail::FormMemo::instance().get_or_build("X12", depth, [depth] {
    const FourierExpansion e4 = eisenstein_h(4, depth);
    const FourierExpansion e6 = eisenstein_h(6, depth);
    const FourierExpansion e4_cubed = mul(mul(e4, e4), e4);
    const FourierExpansion e6_squared = mul(e6, e6);
    FourierExpansion inner = add(scale(BigRational(441, 691), e4_cubed), scale(BigRational(250, 691), e6_squared));
    inner = sub(inner, eisenstein_h(12, depth));
    return scale(BigRational(21421, 203212800), inner);
  });
}

/// X14 = E4 X10.
inline FourierExpansion x14(std::int64_t depth = kDefaultDepth) {
  return detail::FormMemo::instance().get_or_build("X14", depth, [depth] { return mul(eisenstein_h(4, depth), x10(depth)); });
}

/// Closed divisor-sum formula sum_{d | eps(T)} d^13 tau*(2det(T)/d^2) for rank-2 T.
inline BigRational x14_closed(const TMatrix& T) {
  if (!is_psd(T) || rank(T) != 2) throw std::domain_error("x14_closed: T must have rank 2");
  return maass_coefficient([](std::int64_t l) { return l == 0 ? BigRational(0) : BigRational(tau_star(l)); }, 14, T);
}

}  // namespace qmf
