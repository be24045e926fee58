// On-disk JSON cache for tau values and ring-built expansions.
//
// Files live directly in the cache directory:
//   tau.json             {"tau": ["0", "1", "-24", ...]}
//   <FORM>-d<depth>.json {"form", "weight", "depth", "coeffs": [expansion array]}
// Loaded data is exactly what was computed, so cache hits are bit-identical.
#pragma once

#include "qmf/fexp.hpp"
#include "qmf/forms.hpp"
#include "qmf/series.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmf {

class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path form_path(const std::string& name, std::int64_t depth) const {
    return dir_ / (name + "-d" + std::to_string(depth) + ".json");
  }

  std::optional<FourierExpansion> load_form(const std::string& name, std::int64_t depth) const {
    const auto path = form_path(name, depth);
    if (!std::filesystem::exists(path)) return std::nullopt;
    const nlohmann::json j = read(path);
    if (j.at("form") != name || j.at("depth").get<std::int64_t>() != depth) {
      throw std::runtime_error("cache file " + path.string() + " does not match its name");
    }
    return expansion_from_json(j.at("coeffs"), j.at("weight").get<int>(), depth);
  }

  void store_form(const std::string& name, const FourierExpansion& f) const {
    nlohmann::json j = {{"form", name}, {"weight", f.weight()}, {"depth", f.depth()}, {"coeffs", to_json(f)}};
    write(form_path(name, f.depth()), j);
  }

  std::optional<std::vector<BigInt>> load_tau() const {
    const auto path = dir_ / "tau.json";
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::vector<BigInt> out;
    const nlohmann::json j = read(path);
    for (const auto& v : j.at("tau")) out.emplace_back(v.get<std::string>());
    return out;
  }

  void store_tau(const std::vector<BigInt>& values) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : values) arr.push_back(v.get_str());
    write(dir_ / "tau.json", {{"tau", arr}});
  }

  /// Seeds the in-process memos from disk for the given forms at depth.
  void warm(const std::vector<std::string>& forms, std::int64_t depth) const {
    if (auto t = load_tau()) seed_tau(std::move(*t));
    for (const auto& name : forms) {
      if (auto f = load_form(name, depth)) seed_form(name, depth, std::move(*f));
    }
  }

  /// Writes whatever the in-process memos hold for the given forms at depth.
  void flush(const std::vector<std::string>& forms, std::int64_t depth) const {
    if (auto t = tau_snapshot(); !t.empty()) store_tau(t);
    for (const auto& name : forms) {
      if (auto f = memoized_form(name, depth)) {
        if (!std::filesystem::exists(form_path(name, depth))) store_form(name, *f);
      }
    }
  }

 private:
  static nlohmann::json read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return nlohmann::json::parse(in);
  }

  static void write(const std::filesystem::path& path, const nlohmann::json& j) {
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot write " + tmp);
      out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  std::filesystem::path dir_;
};

}  // namespace qmf
