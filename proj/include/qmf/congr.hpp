// Verifiers for the congruence theorems on a bounded box of indices.
//
// Each verifier returns a Verdict: a structured log of the individual
// assertions it checked plus the failing ones as witnesses.
#pragma once

#include "qmf/exactnum.hpp"
#include "qmf/fexp.hpp"
#include "qmf/forms.hpp"
#include "qmf/series.hpp"
#include "qmf/tmat.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmf {

/// A theorem's hypothesis is not met for the requested parameters.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CheckRecord {
  std::optional<TMatrix> T;
  std::string what;
  bool ok = true;
  nlohmann::json data = nlohmann::json::object();
};

struct Verdict {
  enum class Status { holds, fails, skipped };

  std::string theorem;
  nlohmann::json params = nlohmann::json::object();
  Status status = Status::holds;
  std::vector<CheckRecord> log;
  std::size_t exempt = 0;  // indices where the hypothesis does not apply
  std::string note;

  bool holds() const { return status == Status::holds; }
  std::size_t checked() const { return log.size(); }

  void record(CheckRecord rec) {
    if (!rec.ok) status = Status::fails;
    log.push_back(std::move(rec));
  }

  std::vector<CheckRecord> witnesses() const {
    std::vector<CheckRecord> out;
    for (const auto& r : log) {
      if (!r.ok) out.push_back(r);
    }
    return out;
  }
};

inline const char* to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::holds: return "holds";
    case Verdict::Status::fails: return "fails";
    case Verdict::Status::skipped: return "skipped";
  }
  return "?";
}

inline nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j = {{"check", r.what}, {"ok", r.ok}};
  if (r.T) j["T"] = to_string(*r.T);
  if (!r.data.empty()) j["data"] = r.data;
  return j;
}

/// Report JSON; the per-check log is included only on request.
inline nlohmann::json to_json(const Verdict& v, bool with_log = false) {
  nlohmann::json j = {{"theorem", v.theorem},
                      {"params", v.params},
                      {"status", to_string(v.status)},
                      {"witnesses", nlohmann::json::array()},
                      {"checked", v.checked()}};
  for (const auto& w : v.witnesses()) j["witnesses"].push_back(to_json(w));
  if (v.exempt > 0) j["exempt"] = v.exempt;
  if (!v.note.empty()) j["note"] = v.note;
  if (with_log) {
    j["log"] = nlohmann::json::array();
    for (const auto& r : v.log) j["log"].push_back(to_json(r));
  }
  return j;
}

namespace detail {

inline void require_prime_at_least_5(std::int64_t p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("p must be a prime >= 5, got " + std::to_string(p));
}

inline void require_even_weight(int k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("k must be even and >= 4, got " + std::to_string(k));
}

/// (2^{k-2} - 1) B_{k-2} / (k - 2).
inline BigRational star_quantity(int k) {
  return BigRational(pow2_minus_one(k - 2)) * bernoulli(static_cast<unsigned>(k - 2)) / BigRational(k - 2);
}

inline CheckRecord congruence_record(const TMatrix& T, const std::string& what, const BigRational& lhs,
                                     const BigRational& rhs, std::int64_t p) {
  CheckRecord r{T, what, ord_p(lhs - rhs, p).at_least(1), nlohmann::json::object()};
  r.data["lhs"] = lhs.str();
  r.data["rhs"] = rhs.str();
  return r;
}

inline CheckRecord from_cong_verdict(const CongVerdict& cv, const std::string& what) {
  CheckRecord r{cv.witness, what, cv.holds(), nlohmann::json::object()};
  r.data["verdict"] = to_string(cv.status);
  r.data["checked"] = cv.checked;
  if (cv.witness) {
    r.data["lhs"] = cv.lhs.str();
    r.data["rhs"] = cv.rhs.str();
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ramanujan-type congruence

/// ord_p((2^{k-2}-1) B_{k-2}/(k-2)) > 0 and ord_p(B_k / k) >= 0.
inline bool star_condition(int k, std::int64_t p) {
  detail::require_even_weight(k);
  detail::require_prime_at_least_5(p);
  const bool first = ord_p(detail::star_quantity(k), p).greater_than(0);
  const bool second =
      ord_p(bernoulli(static_cast<unsigned>(k)) / BigRational(k), p).at_least(0);
  return first && second;
}

/// Every prime satisfying the star condition for weight k, ascending. The
/// candidates are the prime factors >= 5 of the numerator of the first quantity.
inline std::vector<std::int64_t> star_primes(int k) {
  detail::require_even_weight(k);
  std::vector<std::int64_t> out;
  for (const BigInt& q : prime_factors(detail::star_quantity(k).num())) {
    if (q < 5) continue;
    if (!q.fits_slong_p()) throw std::out_of_range("star_primes: candidate prime too large");
    const std::int64_t p = q.get_si();
    if (star_condition(k, p)) out.push_back(p);
  }
  return out;
}

struct ChiConstruction {
  FourierExpansion chi;
  QSeries f;                         // Phi(G_{k,H}) / p
  std::vector<MonomialTerm> poly;    // f = P(E4, E6)
  Verdict report;
};

/// chi_k = G_{k,H} - p P(E_{4,H}, E_{6,H}) where Phi(G_{k,H}) = p P(E4, E6).
/// The report certifies Phi(chi) = 0 and G_{k,H} = chi (mod p) on the box.
inline ChiConstruction build_chi(int k, std::int64_t p, std::int64_t depth = kDefaultDepth,
                                 int elliptic_prec = kDefaultEllipticPrecision) {
  if (!star_condition(k, p)) {
    throw HypothesisError("star condition fails for k=" + std::to_string(k) + ", p=" + std::to_string(p));
  }
  Verdict report;
  report.theorem = "ramanujan";
  report.params = {{"k", k}, {"p", p}, {"depth", depth}};

  const FourierExpansion g = g_h(k, depth);
  const QSeries phi_g = g_h_phi(k, std::max<int>(elliptic_prec, static_cast<int>(depth)));

  // The closed diagonal series must agree with Phi applied to the truncated expansion.
  const QSeries phi_box = siegel_phi(g);
  report.record({std::nullopt, "phi(G) matches diagonal formula", phi_box == phi_g.truncated(phi_box.prec()), {}});

  const QSeries f = scale(BigRational(1) / BigRational(static_cast<long>(p)), phi_g);
  for (int n = 0; n <= f.prec(); ++n) {
    if (!ord_p(f[n], p).at_least(0)) {
      throw HypothesisError("Phi(G)/p is not p-integral at q^" + std::to_string(n) + " for k=" + std::to_string(k) +
                            ", p=" + std::to_string(p));
    }
  }
  report.record({std::nullopt, "Phi(G)/p is p-integral", true, {{"prec", f.prec()}}});

  std::vector<MonomialTerm> poly = express_in_e4_e6(f);
  bool integral_poly = true;
  nlohmann::json poly_json = nlohmann::json::array();
  for (const auto& t : poly) {
    integral_poly = integral_poly && ord_p(t.coeff, p).at_least(0);
    poly_json.push_back({{"a", t.a}, {"b", t.b}, {"coeff", t.coeff.str()}});
  }
  report.record({std::nullopt, "P has p-integral coefficients", integral_poly, {{"P", poly_json}}});

  const FourierExpansion F = evaluate_e4_e6(poly, eisenstein_h(4, depth), eisenstein_h(6, depth));
  FourierExpansion chi = sub(g, scale(BigRational(static_cast<long>(p)), F));

  const QSeries phi_chi = siegel_phi(chi);
  bool phi_zero = true;
  for (int n = 0; n <= phi_chi.prec(); ++n) phi_zero = phi_zero && phi_chi[n].is_zero();
  report.record({std::nullopt, "Phi(chi) = 0", phi_zero, {}});

  report.record(detail::from_cong_verdict(cong_mod(g, chi, p), "G = chi (mod p)"));
  return {std::move(chi), f, std::move(poly), std::move(report)};
}

/// build_chi plus, where a named cusp form is known (X10 for k=10, X14 for
/// k=14), the congruence chi = X_k (mod p) on the box.
inline Verdict verify_ramanujan(int k, std::int64_t p, std::int64_t depth = kDefaultDepth) {
  ChiConstruction c = build_chi(k, p, depth);
  Verdict v = std::move(c.report);
  std::optional<FourierExpansion> named;
  if (k == 10) named = x10(depth);
  if (k == 14) named = x14(depth);
  if (named) {
    v.record(detail::from_cong_verdict(cong_mod(c.chi, *named, p), "chi = X" + std::to_string(k) + " (mod p)"));
    v.record(detail::from_cong_verdict(cong_mod(g_h(k, depth), *named, p),
                                       "G = X" + std::to_string(k) + " (mod p)"));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Theta operator

/// True iff B_{p-3} is nonzero mod p.
inline bool bernoulli_hypothesis(std::int64_t p) {
  detail::require_prime_at_least_5(p);
  // p never divides the denominator of B_{p-3}, so "nonzero mod p" is ord_p = 0.
  if (p <= 200) return !ord_p(bernoulli(static_cast<unsigned>(p - 3)), p).greater_than(0);
  return bernoulli_mod_p(static_cast<unsigned>(p - 3), p) != 0;
}

/// E_{p-1,H} = 1 (mod p): every non-constant coefficient has ord_p >= 1.
inline Verdict verify_ep_minus_one(std::int64_t p, std::int64_t depth = kDefaultDepth) {
  detail::require_prime_at_least_5(p);
  if (!bernoulli_hypothesis(p)) {
    throw HypothesisError("B_{p-3} = 0 (mod p) for p=" + std::to_string(p));
  }
  Verdict v;
  v.theorem = "ep1";
  v.params = {{"p", p}, {"depth", depth}};
  const FourierExpansion e = eisenstein_h(static_cast<int>(p - 1), depth);
  v.record({TMatrix{}, "constant term is 1", e.at(0) == BigRational(1), {{"value", e.at(0).str()}}});
  for (std::size_t i = 1; i < e.size(); ++i) {
    CheckRecord r{e.box()[i], "ord_p(a) >= 1", ord_p(e.at(i), p).at_least(1), nlohmann::json::object()};
    if (!r.ok) r.data["value"] = e.at(i).str();
    v.record(std::move(r));
  }
  return v;
}

/// Theta(G_{k,H}) = X (mod p) for the two worked pairs (k=4, X10, p=5) and
/// (k=6, X14, p=7), or for a single one selected by p.
inline Verdict verify_theta_cong(std::int64_t depth = kDefaultDepth, std::optional<std::int64_t> only_p = std::nullopt) {
  Verdict v;
  v.theorem = "theta";
  v.params = {{"depth", depth}};
  if (only_p) v.params["p"] = *only_p;
  struct Pair {
    int k;
    std::int64_t p;
    const char* target;
  };
  bool any = false;
  for (const Pair& pr : {Pair{4, 5, "X10"}, Pair{6, 7, "X14"}}) {
    if (only_p && *only_p != pr.p) continue;
    any = true;
    const FourierExpansion lhs = theta(g_h(pr.k, depth));
    const FourierExpansion rhs = pr.k == 4 ? x10(depth) : x14(depth);
    v.record(detail::from_cong_verdict(cong_mod(lhs, rhs, pr.p), "Theta(G" + std::to_string(pr.k) + "H) = " +
                                                                    pr.target + " (mod " + std::to_string(pr.p) + ")"));
  }
  if (!any) throw std::invalid_argument("theta: no worked pair for p=" + std::to_string(*only_p) + " (use 5 or 7)");
  return v;
}

// ---------------------------------------------------------------------------
// Congruences mod 23 and for Eisenstein series

/// a(X14; T) = 0 (mod 23) whenever chi_{-23}(2det T) = -1, plus
/// Theta_chi(X14) - Theta(X14) = 0 (mod 23).
inline Verdict verify_mod23(std::int64_t depth = kDefaultDepth) {
  Verdict v;
  v.theorem = "mod23";
  v.params = {{"depth", depth}};
  const FourierExpansion x = x14(depth);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const TMatrix& T = x.box()[i];
    if (kronecker(-23, two_det(T)) != -1) {
      ++v.exempt;
      continue;
    }
    v.record(detail::congruence_record(T, "a(X14;T) = 0 (mod 23)", x.at(i), BigRational(0), 23));
  }
  const FourierExpansion diff = sub(theta_chi(x, -23), theta(x));
  v.record(detail::from_cong_verdict(cong_mod(diff, FourierExpansion(14, depth), 23),
                                     "Theta_chi(X14) - Theta(X14) = 0 (mod 23)"));
  return v;
}

/// Intermediate step of the Eisenstein congruence: sigma_{(p-1)/2}(l) = 0
/// (mod p) whenever chi_{-p}(l) = -1, for 1 <= l <= ell_max.
inline Verdict verify_euler_sigma(std::int64_t p, std::int64_t ell_max) {
  detail::require_prime_at_least_5(p);
  Verdict v;
  v.theorem = "euler-sigma";
  v.params = {{"p", p}, {"ell_max", ell_max}};
  const auto m = static_cast<unsigned>((p - 1) / 2);
  for (std::int64_t ell = 1; ell <= ell_max; ++ell) {
    if (kronecker(-p, ell) != -1) {
      ++v.exempt;
      continue;
    }
    const BigInt s = sigma(m, ell);
    v.record({std::nullopt, "sigma(" + std::to_string(ell) + ") = 0 (mod p)", s % BigInt(static_cast<long>(p)) == 0, {}});
  }
  return v;
}

/// a(G_{k,H}; T) = 0 (mod p) for p = 2k - 5 whenever chi_{-p}(2det T) = -1.
inline Verdict verify_cong_eis(int k, std::int64_t depth = kDefaultDepth) {
  detail::require_even_weight(k);
  const std::int64_t p = 2L * k - 5;
  if (!is_prime(p)) throw HypothesisError("2k-5 = " + std::to_string(p) + " is not prime");
  Verdict v;
  v.theorem = "congeis";
  v.params = {{"k", k}, {"p", p}, {"depth", depth}};
  const FourierExpansion g = g_h(k, depth);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TMatrix& T = g.box()[i];
    if (kronecker(-p, two_det(T)) != -1) {
      ++v.exempt;
      continue;
    }
    v.record(detail::congruence_record(T, "a(G;T) = 0 (mod p)", g.at(i), BigRational(0), p));
  }
  if (p >= 5) {
    const Verdict euler = verify_euler_sigma(p, 2 * depth * depth);
    v.record({std::nullopt, "sigma_{(p-1)/2}(l) = 0 (mod p) for chi_{-p}(l) = -1, l <= 2 depth^2", euler.holds(),
              {{"checked", euler.checked()}}});
  }
  return v;
}

/// Table of star primes for k = 4, 6, ..., k_max.
inline std::map<int, std::vector<std::int64_t>> star_table(int k_max = 20) {
  std::map<int, std::vector<std::int64_t>> out;
  for (int k = 4; k <= k_max; k += 2) out[k] = star_primes(k);
  return out;
}

}  // namespace qmf
