#pragma once

// Dimension sizing for every architecture/task pair.
//
// Each asymptotic bound becomes a concrete formula with a named leading
// constant. All default constants live in default_constants() so calibration
// reports can cite them; a per-call override is accepted through
// SizingParams::C.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace vsacap {

enum class Arch : std::uint8_t { mapi = 0, mapb = 1, bloom = 2, cbloom = 3, hopfield = 4 };

std::string_view to_string(Arch arch);
Arch arch_from_string(std::string_view name);

struct SizingParams {
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> N;       // bound on ||v||_1 ||w||_1 per pair
  std::optional<double> M;       // number of pairs
  std::optional<double> L;       // sequence length
  std::optional<double> K;       // sequence overlap
  std::optional<double> k;       // binding arity
  std::optional<double> v1;      // ||v||_1
  std::optional<double> d;       // universe size
  std::optional<double> n;       // set size / intersection size / stored patterns
  std::optional<double> n_v;     // |X \ Y| (Bloom, Counting Bloom)
  std::optional<double> n_w;     // |Y \ X|
  std::optional<double> K_b;     // ||v - w||_inf bound
  std::optional<double> size_x;  // |X| (MAP-B empty intersection)
  std::optional<double> size_y;  // |Y|
  std::optional<double> C;       // overrides the leading constant

  // Keys as in the field names; unknown keys throw std::invalid_argument.
  static SizingParams from_map(const std::map<std::string, double>& values);
  std::map<std::string, double> to_map() const;

  // Throws std::invalid_argument("missing parameter: <name>") when absent.
  double require(const char* name) const;
  // Positive eps; delta in (0, 1).
  double require_eps() const;
  double require_delta() const;
};

struct SizingResult {
  std::uint64_t m = 1;
  std::optional<std::uint64_t> k;
  double m_exact = 0;  // the formula's value before the ceiling
  std::optional<double> k_exact;
  std::string formula;
  std::map<std::string, double> constants;
  std::map<std::string, double> inputs;

  nlohmann::json to_json() const;
};

// Named default constants, e.g. "mapi.norm" -> 8, "bloom.c1" -> 98/3.
const std::map<std::string, double>& default_constants();
double default_constant(const std::string& name);

// Ceiling that treats values within a few ulps of an integer as that integer,
// so closed forms like (2/3) ln(e^3) = 2 do not round up to 3.
std::uint64_t tolerant_ceil(double x);

// Dispatches to the per-architecture calculators (sizing_mapi, sizing_mapb,
// sizing_bloom, sizing_cbloom, sizing_hopfield). Throws std::invalid_argument
// on an unknown (arch, task) pair or a missing/invalid parameter.
SizingResult size(Arch arch, std::string_view task, const SizingParams& params);

namespace detail {
// Leading constant: the override in params.C, else the named default.
double leading_constant(const SizingParams& params, const std::string& name);
// Fills m (tolerant ceiling, at least m_min), formula id and the inputs echo.
SizingResult finish(std::string formula, double m_exact, const SizingParams& params,
                    std::map<std::string, double> constants, std::uint64_t m_min = 1);
}  // namespace detail

}  // namespace vsacap
