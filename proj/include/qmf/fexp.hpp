// Truncated Fourier expansions of degree-2 quaternionic modular forms.
//
// An expansion stores one coefficient per psd index T with n, m <= depth. The
// box is closed under psd decomposition (T1 + T2 = T with T1, T2 psd forces
// n1, n2 <= n and m1, m2 <= m), so products computed inside it are exact.
#pragma once

#include "qmf/exactnum.hpp"
#include "qmf/series.hpp"
#include "qmf/tmat.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmf {

class FourierExpansion {
 public:
  /// Zero expansion of the given weight truncated at depth.
  FourierExpansion(int weight, std::int64_t depth)
      : box_(PsdBox::get(depth)), weight_(weight), coeffs_(box_->size()) {}

  FourierExpansion(int weight, std::shared_ptr<const PsdBox> box)
      : box_(std::move(box)), weight_(weight), coeffs_(box_->size()) {}

  int weight() const { return weight_; }
  std::int64_t depth() const { return box_->depth(); }
  const PsdBox& box() const { return *box_; }
  const std::shared_ptr<const PsdBox>& shared_box() const { return box_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Set for images of the theta operators, which are formal series only.
  bool theta_image() const { return theta_image_; }
  void set_theta_image(bool v) { theta_image_ = v; }

  /// Coefficient a(f; T). Non-psd indices have coefficient 0; psd indices
  /// outside the truncation box are an error.
  BigRational coeff(const TMatrix& T) const {
    if (!is_psd(T)) return BigRational(0);
    const std::int64_t i = box_->find(T);
    if (i < 0) throw std::out_of_range("index " + to_string(T) + " lies outside the truncation box");
    return coeffs_[static_cast<std::size_t>(i)];
  }

  const BigRational& at(std::size_t i) const { return coeffs_[i]; }
  BigRational& at(std::size_t i) { return coeffs_[i]; }

  void set(const TMatrix& T, BigRational v) {
    const std::int64_t i = box_->find(T);
    if (i < 0) throw std::out_of_range("index " + to_string(T) + " lies outside the truncation box");
    coeffs_[static_cast<std::size_t>(i)] = std::move(v);
  }

  /// Same form truncated to a smaller box.
  FourierExpansion restricted(std::int64_t depth) const {
    if (depth > this->depth()) throw std::out_of_range("restricted: cannot enlarge the truncation box");
    if (depth == this->depth()) return *this;
    FourierExpansion r(weight_, depth);
    r.theta_image_ = theta_image_;
    for (std::size_t i = 0; i < r.size(); ++i) r.coeffs_[i] = coeff(r.box()[i]);
    return r;
  }

  friend bool operator==(const FourierExpansion& f, const FourierExpansion& g) {
    return f.weight_ == g.weight_ && f.depth() == g.depth() && f.coeffs_ == g.coeffs_;
  }

 private:
  std::shared_ptr<const PsdBox> box_;
  int weight_;
  bool theta_image_ = false;
  std::vector<BigRational> coeffs_;
};

inline FourierExpansion one_like(const FourierExpansion& f) {
  FourierExpansion r(0, f.shared_box());
  r.at(0) = 1;
  return r;
}

namespace detail {

inline std::pair<FourierExpansion, FourierExpansion> common_box(const FourierExpansion& f, const FourierExpansion& g) {
  const std::int64_t depth = std::min(f.depth(), g.depth());
  return {f.restricted(depth), g.restricted(depth)};
}

}  // namespace detail

inline FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g) {
  if (f.weight() != g.weight()) {
    throw std::invalid_argument("add: weight mismatch (" + std::to_string(f.weight()) + " vs " +
                                std::to_string(g.weight()) + ")");
  }
  auto [a, b] = detail::common_box(f, g);
  for (std::size_t i = 0; i < a.size(); ++i) a.at(i) += b.at(i);
  a.set_theta_image(f.theta_image() || g.theta_image());
  return a;
}

inline FourierExpansion sub(const FourierExpansion& f, const FourierExpansion& g) {
  if (f.weight() != g.weight()) throw std::invalid_argument("sub: weight mismatch");
  auto [a, b] = detail::common_box(f, g);
  for (std::size_t i = 0; i < a.size(); ++i) a.at(i) -= b.at(i);
  a.set_theta_image(f.theta_image() || g.theta_image());
  return a;
}

inline FourierExpansion scale(const BigRational& c, const FourierExpansion& f) {
  FourierExpansion r = f;
  for (std::size_t i = 0; i < r.size(); ++i) r.at(i) *= c;
  return r;
}

/// Truncated product: a(fg; T) = sum over psd T1 + T2 = T of a(f; T1) a(g; T2).
///
/// Both factors are cleared to integer numerators over a common denominator,
/// then every pair of nonzero (n, m)-blocks whose sum stays in the box is
/// combined with integer multiply-accumulate.
inline FourierExpansion mul(const FourierExpansion& f_in, const FourierExpansion& g_in) {
  auto [f, g] = detail::common_box(f_in, g_in);
  const PsdBox& box = f.box();
  const std::int64_t depth = box.depth();

  auto integralize = [&](const FourierExpansion& h, BigInt& den) {
    den = 1;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!h.at(i).is_integer()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), h.at(i).den().get_mpz_t());
    }
    std::vector<BigInt> nums(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!h.at(i).is_zero()) nums[i] = h.at(i).num() * (den / h.at(i).den());
    }
    return nums;
  };
  BigInt den_f, den_g;
  const std::vector<BigInt> fi = integralize(f, den_f);
  const std::vector<BigInt> gi = integralize(g, den_g);

  auto nonzero = [&](const std::vector<BigInt>& v, const PsdBox::Block& b) {
    std::vector<std::size_t> out;
    for (std::size_t i = b.begin; i < b.end; ++i) {
      if (v[i] != 0) out.push_back(i);
    }
    return out;
  };

  std::vector<BigInt> acc(box.size(), 0);
  for (const auto& b1 : box.blocks()) {
    const auto nz1 = nonzero(fi, b1);
    if (nz1.empty()) continue;
    for (const auto& b2 : box.blocks()) {
      if (b1.n + b2.n > depth || b1.m + b2.m > depth) continue;
      const auto nz2 = nonzero(gi, b2);
      if (nz2.empty()) continue;
      const PsdBox::Block& target = box.block(b1.n + b2.n, b1.m + b2.m);
      for (std::size_t i : nz1) {
        const QuatCoord& t1 = box[i].t;
        for (std::size_t j : nz2) {
          const std::int64_t k = PsdBox::find_in(target, t1 + box[j].t);
          if (k < 0) throw std::logic_error("mul: psd sum fell outside the box");
          mpz_addmul(acc[static_cast<std::size_t>(k)].get_mpz_t(), fi[i].get_mpz_t(), gi[j].get_mpz_t());
        }
      }
    }
  }

  FourierExpansion r(f.weight() + g.weight(), f.shared_box());
  const BigInt den = den_f * den_g;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (acc[i] != 0) r.at(i) = BigRational(acc[i], den);
  }
  r.set_theta_image(f.theta_image() || g.theta_image());
  return r;
}

/// Siegel operator: the q^n coefficient is a(f; diag(n, 0)).
inline QSeries siegel_phi(const FourierExpansion& f) {
  QSeries r(f.weight(), static_cast<int>(f.depth()));
  for (std::int64_t n = 0; n <= f.depth(); ++n) r[static_cast<int>(n)] = f.coeff({n, 0, {}});
  return r;
}

/// Theta operator: a(f; T) -> 2det(T) a(f; T). The weight label is kept.
inline FourierExpansion theta(const FourierExpansion& f) {
  FourierExpansion r = f;
  for (std::size_t i = 0; i < r.size(); ++i) r.at(i) *= BigRational(two_det(r.box()[i]));
  r.set_theta_image(true);
  return r;
}

/// Theta operator twisted by the Kronecker character chi_D of 2det(T).
inline FourierExpansion theta_chi(const FourierExpansion& f, std::int64_t D) {
  FourierExpansion r = f;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::int64_t td = two_det(r.box()[i]);
    r.at(i) *= BigRational(td * kronecker(D, td));
  }
  r.set_theta_image(true);
  return r;
}

// ---------------------------------------------------------------------------
// Congruences

struct CongVerdict {
  enum class Status { holds, fails, not_p_integral };

  Status status = Status::holds;
  std::optional<TMatrix> witness;
  BigRational lhs, rhs;  // values at the witness
  std::size_t checked = 0;

  bool holds() const { return status == Status::holds; }
};

inline const char* to_string(CongVerdict::Status s) {
  switch (s) {
    case CongVerdict::Status::holds: return "holds";
    case CongVerdict::Status::fails: return "fails";
    case CongVerdict::Status::not_p_integral: return "not-p-integral";
  }
  return "?";
}

/// f = g (mod p) coefficientwise on the shared box. All coefficients on both
/// sides must be p-integral; the first offending index is reported otherwise.
inline CongVerdict cong_mod(const FourierExpansion& f, const FourierExpansion& g, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("cong_mod: modulus must be prime");
  if (f.depth() != g.depth()) throw std::invalid_argument("cong_mod: truncation depths differ");
  CongVerdict v;
  const PsdBox& box = f.box();
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!ord_p(f.at(i), p).at_least(0) || !ord_p(g.at(i), p).at_least(0)) {
      v.status = CongVerdict::Status::not_p_integral;
      v.witness = box[i];
      v.lhs = f.at(i);
      v.rhs = g.at(i);
      return v;
    }
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    ++v.checked;
    if (!ord_p(f.at(i) - g.at(i), p).at_least(1)) {
      v.status = CongVerdict::Status::fails;
      v.witness = box[i];
      v.lhs = f.at(i);
      v.rhs = g.at(i);
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json rational_to_json(const BigRational& r) {
  return {{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

inline BigRational rational_from_json(const nlohmann::json& j) {
  return BigRational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

/// JSON array of {"T": "n,m,a,b,c,d", "coeff": {...}} over nonzero coefficients,
/// in box order.
inline nlohmann::json to_json(const FourierExpansion& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.at(i).is_zero()) continue;
    arr.push_back({{"T", to_string(f.box()[i])}, {"coeff", rational_to_json(f.at(i))}});
  }
  return arr;
}

inline FourierExpansion expansion_from_json(const nlohmann::json& arr, int weight, std::int64_t depth) {
  FourierExpansion f(weight, depth);
  for (const auto& e : arr) {
    f.set(parse_tmatrix(e.at("T").get<std::string>()), rational_from_json(e.at("coeff")));
  }
  return f;
}

}  // namespace qmf
