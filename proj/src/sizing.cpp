#include "vsacap/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vsacap/bloom.hpp"
#include "vsacap/cbloom.hpp"
#include "vsacap/hopfield.hpp"
#include "vsacap/mapb.hpp"
#include "vsacap/mapi.hpp"

namespace vsacap {

namespace {

struct Field {
  const char* name;
  std::optional<double> SizingParams::*member;
};

constexpr Field kFields[] = {
    {"eps", &SizingParams::eps}, {"delta", &SizingParams::delta}, {"N", &SizingParams::N},
    {"M", &SizingParams::M},     {"L", &SizingParams::L},         {"K", &SizingParams::K},
    {"k", &SizingParams::k},     {"v1", &SizingParams::v1},       {"d", &SizingParams::d},
    {"n", &SizingParams::n},     {"n_v", &SizingParams::n_v},     {"n_w", &SizingParams::n_w},
    {"K_b", &SizingParams::K_b}, {"size_x", &SizingParams::size_x}, {"size_y", &SizingParams::size_y},
    {"C", &SizingParams::C},
};

}  // namespace

std::string_view to_string(Arch arch) {
  switch (arch) {
    case Arch::mapi: return "mapi";
    case Arch::mapb: return "mapb";
    case Arch::bloom: return "bloom";
    case Arch::cbloom: return "cbloom";
    case Arch::hopfield: return "hopfield";
  }
  return "unknown";
}

Arch arch_from_string(std::string_view name) {
  for (auto a : {Arch::mapi, Arch::mapb, Arch::bloom, Arch::cbloom, Arch::hopfield}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown architecture: " + std::string(name));
}

SizingParams SizingParams::from_map(const std::map<std::string, double>& values) {
  SizingParams p;
  for (const auto& [key, value] : values) {
    bool known = false;
    for (const auto& f : kFields) {
      if (key == f.name) {
        p.*(f.member) = value;
        known = true;
        break;
      }
    }
    if (!known) throw std::invalid_argument("unknown sizing parameter: " + key);
  }
  return p;
}

std::map<std::string, double> SizingParams::to_map() const {
  std::map<std::string, double> out;
  for (const auto& f : kFields) {
    if ((this->*(f.member)).has_value()) out[f.name] = *(this->*(f.member));
  }
  return out;
}

double SizingParams::require(const char* name) const {
  for (const auto& f : kFields) {
    if (std::string_view(name) == f.name) {
      const auto& v = this->*(f.member);
      if (!v) throw std::invalid_argument(std::string("missing parameter: ") + name);
      if (!std::isfinite(*v) || *v < 0) throw std::invalid_argument(std::string("invalid parameter: ") + name);
      return *v;
    }
  }
  throw std::invalid_argument(std::string("unknown sizing parameter: ") + name);
}

double SizingParams::require_eps() const {
  const double e = require("eps");
  if (e <= 0) throw std::invalid_argument("eps must be positive");
  return e;
}

double SizingParams::require_delta() const {
  if (!delta) throw std::invalid_argument("missing parameter: delta");
  if (!(*delta > 0 && *delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  return *delta;
}

nlohmann::json SizingResult::to_json() const {
  nlohmann::json j = {
      {"m", m}, {"m_exact", m_exact}, {"formula", formula}, {"constants", constants}, {"inputs", inputs},
  };
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  if (k_exact) j["k_exact"] = *k_exact;
  return j;
}

const std::map<std::string, double>& default_constants() {
  static const std::map<std::string, double> table = {
      {"mapi.norm", 8.0},
      {"mapi.pairs", 8.0},
      {"mapi.sequence", 8.0},
      {"mapi.sequence-symbols", 8.0},
      {"mapi.binding2", 8.0},
      {"mapi.bindingK", 8.0},
      {"mapi.bindingK.base", 2.0},
      {"mapi.norm-sparse-jl", 8.0},
      {"mapi.norm-srht", 8.0},
      {"mapb.member", 16.0},
      {"mapb.sequence-member", 16.0},
      {"mapb.kv-member", 16.0},
      {"mapb.empty-intersection", 32.0},
      {"bloom.c1", 98.0 / 3.0},
      {"cbloom.k", 2.0 / 3.0},
      {"cbloom.m", 12.0 * std::numbers::pi * std::numbers::pi},
      {"hopfield.store", 4.0},
      {"hopfield.hpm-norm", 1.0},
      {"hopfield.hpm-product", 1.0},
  };
  return table;
}

double default_constant(const std::string& name) {
  const auto& t = default_constants();
  auto it = t.find(name);
  if (it == t.end()) throw std::invalid_argument("no sizing constant named " + name);
  return it->second;
}

std::uint64_t tolerant_ceil(double x) {
  if (!std::isfinite(x)) throw std::overflow_error("sizing: formula value is not finite");
  if (x <= 0) return 0;
  if (x >= 1.8e19) throw std::overflow_error("sizing: dimension exceeds 64 bits");
  const double r = std::round(x);
  if (std::abs(x - r) <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
    return static_cast<std::uint64_t>(r);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

namespace detail {

double leading_constant(const SizingParams& params, const std::string& name) {
  if (params.C) {
    if (!(*params.C > 0)) throw std::invalid_argument("sizing constant override must be positive");
    return *params.C;
  }
  return default_constant(name);
}

SizingResult finish(std::string formula, double m_exact, const SizingParams& params,
                    std::map<std::string, double> constants, std::uint64_t m_min) {
  SizingResult r;
  r.formula = std::move(formula);
  r.m_exact = m_exact;
  r.m = std::max(m_min, tolerant_ceil(m_exact));
  r.constants = std::move(constants);
  r.inputs = params.to_map();
  return r;
}

}  // namespace detail

SizingResult size(Arch arch, std::string_view task, const SizingParams& params) {
  switch (arch) {
    case Arch::mapi: return sizing_mapi(task, params);
    case Arch::mapb: return sizing_mapb(task, params);
    case Arch::bloom:
      if (task != "intersection" && task != "size") break;
      return sizing_bloom(params);
    case Arch::cbloom:
      if (task != "intersection" && task != "l1") break;
      return sizing_cbloom(params);
    case Arch::hopfield: return sizing_hopfield_task(task, params);
  }
  throw std::invalid_argument("unknown sizing task " + std::string(to_string(arch)) + "/" + std::string(task));
}

}  // namespace vsacap
