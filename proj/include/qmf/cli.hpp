// Command-line front end. run_cli is the whole program; tools/qmf.cpp only
// forwards argv to it, which keeps every subcommand testable in-process.
//
// Exit codes: 0 all checks hold, 1 a checked assertion failed, 2 usage or
// input error.
#pragma once

#include "qmf/cache.hpp"
#include "qmf/congr.hpp"
#include "qmf/exactnum.hpp"
#include "qmf/fexp.hpp"
#include "qmf/forms.hpp"
#include "qmf/tmat.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmf {

/// A form the CLI can name: E<k>H, G<k>H, X10, X12 or X14.
struct NamedForm {
  enum class Kind { eisenstein, g_eisenstein, cusp };
  Kind kind;
  int weight;
  std::string name;
};

inline NamedForm parse_form_name(const std::string& s) {
  if (s == "X10" || s == "X12" || s == "X14") return {NamedForm::Kind::cusp, std::stoi(s.substr(1)), s};
  if (s.size() >= 3 && (s.front() == 'E' || s.front() == 'G') && s.back() == 'H') {
    const std::string digits = s.substr(1, s.size() - 2);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 3) {
      const int k = std::stoi(digits);
      if (k >= 4 && k % 2 == 0) {
        return {s.front() == 'E' ? NamedForm::Kind::eisenstein : NamedForm::Kind::g_eisenstein, k, s};
      }
    }
  }
  throw std::invalid_argument("unknown form '" + s + "' (expected E<k>H, G<k>H, X10, X12 or X14 with k even >= 4)");
}

inline FourierExpansion build_form(const NamedForm& f, std::int64_t depth) {
  switch (f.kind) {
    case NamedForm::Kind::eisenstein: return eisenstein_h(f.weight, depth);
    case NamedForm::Kind::g_eisenstein: return g_h(f.weight, depth);
    case NamedForm::Kind::cusp:
      if (f.weight == 10) return x10(depth);
      if (f.weight == 12) return x12(depth);
      return x14(depth);
  }
  throw std::logic_error("build_form: unreachable");
}

/// Largest box the CLI will build by ring multiplication for a single coefficient.
inline constexpr std::int64_t kMaxRingDepth = 6;

/// a(f; T). Eisenstein coefficients and X14 come straight from closed
/// formulas; X10 and X12 are built on a box just large enough to contain T.
inline BigRational form_coefficient(const NamedForm& f, const TMatrix& T, std::int64_t depth) {
  if (!is_psd(T)) return BigRational(0);
  switch (f.kind) {
    case NamedForm::Kind::eisenstein: return eisenstein_h_coeff(f.weight, T);
    case NamedForm::Kind::g_eisenstein: return g_h_coeff(f.weight, T);
    case NamedForm::Kind::cusp: {
      if (rank(T) < 2) return BigRational(0);
      if (f.weight == 14) return x14_closed(T);
      const std::int64_t d = std::max({depth, T.n, T.m});
      if (d > kMaxRingDepth) {
        throw std::invalid_argument(f.name + " needs a depth-" + std::to_string(d) + " box for this T; the limit is " +
                                    std::to_string(kMaxRingDepth));
      }
      return build_form(f, d).coeff(T);
    }
  }
  throw std::logic_error("form_coefficient: unreachable");
}

namespace detail {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::string residue_text(const BigRational& v, std::int64_t p) {
  if (!ord_p(v, p).at_least(0)) return "not " + std::to_string(p) + "-integral";
  return std::to_string(residue_mod(v, p));
}

inline void require_depth(std::int64_t depth, std::ostream& err) {
  if (depth < 0) throw UsageError("depth must be nonnegative");
  if (depth >= 5) {
    err << "warning: depth " << depth << " is expensive: box size grows like depth^6 and products like its square\n";
  }
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier coefficients and congruence checks for degree-2 quaternionic modular forms", "qmf"};
  app.require_subcommand(1);

  std::string cache_dir;
  if (const char* env = std::getenv("QMF_CACHE")) cache_dir = env;
  app.add_option("--cache", cache_dir, "Directory for persisted tau values and expansions (default: $QMF_CACHE)");

  // coeff
  auto* coeff_cmd = app.add_subcommand("coeff", "Print one Fourier coefficient a(F; T)");
  std::string form_name, t_text;
  std::optional<std::int64_t> mod_p;
  std::int64_t depth = kDefaultDepth;
  coeff_cmd->add_option("--form", form_name, "E<k>H, G<k>H, X10, X12 or X14")->required();
  coeff_cmd->add_option("--T", t_text, "Index matrix as n,m,a,b,c,d")->required();
  coeff_cmd->add_option("--mod", mod_p, "Also print the residue modulo this prime");
  coeff_cmd->add_option("--depth", depth, "Minimum truncation depth for ring-built forms");

  // table
  auto* table_cmd = app.add_subcommand("table", "Tabulate coefficients over the box n, m <= max");
  std::int64_t table_max = 2;
  std::string format = "csv";
  table_cmd->add_option("--form", form_name, "Form name")->required();
  table_cmd->add_option("--max", table_max, "Box bound on n and m");
  table_cmd->add_option("--mod", mod_p, "Add a residue column modulo this prime");
  table_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // dump
  auto* dump_cmd = app.add_subcommand("dump", "Serialize a truncated expansion as JSON");
  dump_cmd->add_option("--form", form_name, "Form name")->required();
  dump_cmd->add_option("--depth", depth, "Truncation depth");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a congruence verifier and print a JSON report");
  std::string theorem, out_path;
  std::optional<int> k_opt;
  std::optional<std::int64_t> p_opt;
  bool with_log = false;
  verify_cmd->add_option("theorem", theorem, "ramanujan | theta | mod23 | congeis | ep1")
      ->required()
      ->check(CLI::IsMember({"ramanujan", "theta", "mod23", "congeis", "ep1"}));
  verify_cmd->add_option("--k", k_opt, "Weight");
  verify_cmd->add_option("--p", p_opt, "Prime");
  verify_cmd->add_option("--depth", depth, "Truncation depth");
  verify_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
  verify_cmd->add_flag("--log", with_log, "Include the per-index check log");

  // star-primes
  auto* star_cmd = app.add_subcommand("star-primes", "Primes satisfying the Ramanujan-type condition, per weight");
  std::optional<int> star_k;
  int star_max = 20;
  star_cmd->add_option("--k", star_k, "Single weight");
  star_cmd->add_option("--max", star_max, "Largest weight for the full table");

  std::vector<const char*> argv{"qmf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::optional<DiskCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);
    const std::vector<std::string> cusp_names{"X10", "X12", "X14"};

    if (*coeff_cmd) {
      const NamedForm f = parse_form_name(form_name);
      const TMatrix T = parse_tmatrix(t_text);
      if (mod_p && !is_prime(*mod_p)) throw detail::UsageError("--mod must be a prime");
      if (!is_psd(T)) err << "warning: T = " << to_string(T) << " is not positive semidefinite; coefficient is 0\n";
      const bool ring_built = f.kind == NamedForm::Kind::cusp && f.weight != 14 && is_psd(T) && rank(T) == 2;
      const std::int64_t d = ring_built ? std::max({depth, T.n, T.m}) : depth;
      detail::require_depth(ring_built ? d : 0, err);
      if (cache) cache->warm(cusp_names, d);
      const BigRational v = form_coefficient(f, T, d);
      out << v.str();
      if (mod_p) out << " ≡ " << detail::residue_text(v, *mod_p) << " (mod " << *mod_p << ")";
      out << "\n";
      if (cache) cache->flush(cusp_names, d);
      return 0;
    }

    if (*table_cmd) {
      const NamedForm f = parse_form_name(form_name);
      if (mod_p && !is_prime(*mod_p)) throw detail::UsageError("--mod must be a prime");
      detail::require_depth(table_max, err);
      if (cache) cache->warm(cusp_names, table_max);
      const FourierExpansion e = build_form(f, table_max);
      if (format == "csv") {
        out << "T,coeff" << (mod_p ? ",residue" : "") << "\n";
        for (std::size_t i = 0; i < e.size(); ++i) {
          out << '"' << to_string(e.box()[i]) << "\"," << e.at(i).str();
          if (mod_p) out << "," << detail::residue_text(e.at(i), *mod_p);
          out << "\n";
        }
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < e.size(); ++i) {
          nlohmann::json row = {{"T", to_string(e.box()[i])}, {"coeff", rational_to_json(e.at(i))}};
          if (mod_p) row["residue"] = detail::residue_text(e.at(i), *mod_p);
          rows.push_back(row);
        }
        out << rows.dump(2) << "\n";
      }
      if (cache) cache->flush(cusp_names, table_max);
      return 0;
    }

    if (*dump_cmd) {
      const NamedForm f = parse_form_name(form_name);
      detail::require_depth(depth, err);
      if (cache) cache->warm(cusp_names, depth);
      out << to_json(build_form(f, depth)).dump() << "\n";
      if (cache) cache->flush(cusp_names, depth);
      return 0;
    }

    if (*star_cmd) {
      nlohmann::json j = nlohmann::json::object();
      if (star_k) {
        j[std::to_string(*star_k)] = star_primes(*star_k);
      } else {
        for (const auto& [k, ps] : star_table(star_max)) j[std::to_string(k)] = ps;
      }
      out << j.dump() << "\n";
      return 0;
    }

    if (*verify_cmd) {
      detail::require_depth(depth, err);
      if (cache) cache->warm(cusp_names, depth);
      Verdict v;
      try {
        if (theorem == "ramanujan") {
          if (!k_opt || !p_opt) throw detail::UsageError("verify ramanujan needs --k and --p");
          v = verify_ramanujan(*k_opt, *p_opt, depth);
        } else if (theorem == "theta") {
          v = verify_theta_cong(depth, p_opt);
        } else if (theorem == "mod23") {
          v = verify_mod23(depth);
        } else if (theorem == "congeis") {
          if (!k_opt) throw detail::UsageError("verify congeis needs --k");
          v = verify_cong_eis(*k_opt, depth);
        } else {
          if (!p_opt) throw detail::UsageError("verify ep1 needs --p");
          v = verify_ep_minus_one(*p_opt, depth);
        }
      } catch (const HypothesisError& e) {
        v.theorem = theorem;
        v.params = {{"depth", depth}};
        if (k_opt) v.params["k"] = *k_opt;
        if (p_opt) v.params["p"] = *p_opt;
        v.status = Verdict::Status::skipped;
        v.note = e.what();
        err << "error: hypothesis not met: " << e.what() << "\n";
        out << to_json(v).dump(2) << "\n";
        return 2;
      }
      const std::string report = to_json(v, with_log).dump(2);
      if (out_path.empty()) {
        out << report << "\n";
      } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << report << "\n";
      }
      if (cache) cache->flush(cusp_names, depth);
      return v.holds() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace qmf
