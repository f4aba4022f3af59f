#pragma once

// Seeded generators of atomic vectors.
//
// A Codebook describes an m x d random matrix without storing it. Column j is
// a pure function of (kind, m, d, k, seed, j), computed on demand from the
// counter-based streams in rng.hpp.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vsacap/hypervector.hpp"

namespace vsacap {

enum class CodebookKind : std::uint8_t {
  dense_sign,            // uniform +-1 entries
  sparse_binary_trials,  // k uniform trials with replacement, repeats collapse
  sparse_binary_exact,   // exactly k distinct ones
  srht,                  // rows of H*D selected by a seeded subset Z
  sparse_jl,             // k distinct nonzeros with independent signs
  explicit_sign,         // caller-supplied +-1 columns
};

std::string_view to_string(CodebookKind kind);
CodebookKind codebook_kind_from_string(std::string_view name);

struct CodebookParams {
  CodebookKind kind = CodebookKind::dense_sign;
  std::uint64_t m = 0;
  std::uint64_t d = 0;
  std::uint32_t k = 0;  // sparsity; sparse kinds only
  std::uint64_t seed = 0;
  bool scaled = false;
};

// (-1)^popcount(a & b): entry (a, b) of the Sylvester-Hadamard matrix.
constexpr int hadamard_entry(std::uint64_t a, std::uint64_t b) noexcept {
  return (__builtin_popcountll(a & b) & 1) ? -1 : 1;
}

class Codebook {
 public:
  // Throws std::invalid_argument on inconsistent parameters.
  explicit Codebook(const CodebookParams& params);

  // Codebook over fixed +-1 columns (each of length m).
  static Codebook from_columns(const std::vector<std::vector<std::int32_t>>& columns, bool scaled = false);

  const CodebookParams& params() const noexcept { return params_; }
  CodebookKind kind() const noexcept { return params_.kind; }
  std::uint64_t m() const noexcept { return params_.m; }
  std::uint64_t d() const noexcept { return params_.d; }
  std::uint32_t k() const noexcept { return params_.k; }
  std::uint64_t seed() const noexcept { return params_.seed; }
  bool scaled() const noexcept { return params_.scaled; }

  // Kinds whose columns are +-1 everywhere (dense-sign, srht, explicit-sign).
  bool is_sign_kind() const noexcept;
  bool is_sparse_binary() const noexcept;

  // Column scale factor applied when `scaled` is set: 1/sqrt(m), 1/k or 1/sqrt(k).
  double column_scale() const noexcept;

  // The j-th atomic vector, scaled iff scaled(). Throws std::out_of_range.
  Hypervector atomic(std::uint64_t j) const;

  // Unscaled column j written into `out` (length m). Works for every kind.
  void column_into(std::uint64_t j, std::span<std::int32_t> out) const;
  // acc += weight * (unscaled column j).
  void accumulate(std::uint64_t j, std::int32_t weight, std::span<std::int32_t> acc) const;

  // Sorted distinct row indices of the nonzeros of column j (sparse kinds).
  std::vector<std::uint32_t> support(std::uint64_t j) const;
  // Bloom trials for column j in draw order (may repeat).
  void trial_positions(std::uint64_t j, std::vector<std::uint32_t>& out) const;
  // (row, sign) pairs of a sparse-JL column.
  std::vector<std::pair<std::uint32_t, int>> sparse_jl_entries(std::uint64_t j) const;

  // (Z H D)_{ij} for an srht codebook.
  int srht_entry(std::uint64_t i, std::uint64_t j) const;
  std::uint64_t hadamard_order() const noexcept { return hadamard_order_; }
  std::span<const std::uint64_t> srht_rows() const noexcept { return srht_rows_; }

  // Full m x d matrix, column-major, unscaled. Generated word-by-word across
  // all columns rather than column-by-column; used to cross-check column().
  std::vector<std::int32_t> materialize() const;

  nlohmann::json to_json() const;
  static Codebook from_json(const nlohmann::json& j);
  // FNV-1a of the canonical JSON dump; identifies the codebook in bundle headers.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Codebook& a, const Codebook& b) noexcept { return a.fingerprint_ == b.fingerprint_; }

 private:
  Codebook() = default;
  void check_symbol(std::uint64_t j) const;
  int srht_diagonal(std::uint64_t j) const;

  CodebookParams params_;
  std::uint64_t hadamard_order_ = 0;
  std::vector<std::uint64_t> srht_rows_;
  std::vector<std::int8_t> explicit_;  // column-major, explicit-sign only
  std::uint64_t fingerprint_ = 0;
};

// Tie-resolving sign: +1 / -1 for nonzero a; for a == 0 the fair coin for
// (tie_seed, step, coordinate).
int tie_sign(std::int64_t a, std::uint64_t tie_seed, std::uint64_t step, std::uint64_t coordinate);

}  // namespace vsacap
