#pragma once

// Bloom-filter bundles: saturating OR of sparse binary columns, with the
// h_{m,k} inversion for set and intersection sizes.

#include <cstdint>
#include <vector>

#include "vsacap/codebook.hpp"
#include "vsacap/hypervector.hpp"
#include "vsacap/setalg.hpp"
#include "vsacap/sizing.hpp"

namespace vsacap {

class BloomBundle {
 public:
  // Empty filter over a sparse-binary-trials codebook.
  explicit BloomBundle(Codebook cb);
  BloomBundle(Codebook cb, std::vector<std::uint64_t> words);

  const Codebook& codebook() const noexcept { return cb_; }
  std::uint64_t m() const noexcept { return cb_.m(); }
  std::uint32_t k() const noexcept { return cb_.k(); }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  bool bit(std::uint64_t i) const { return (words_.at(i >> 6) >> (i & 63)) & 1u; }
  void set_bit(std::uint64_t i) { words_.at(i >> 6) |= std::uint64_t{1} << (i & 63); }
  std::uint64_t popcount() const noexcept;
  // Inserts symbol j; re-inserting a present symbol leaves the bits unchanged.
  void insert(std::uint64_t j);

  Hypervector vector() const;

  friend bool operator==(const BloomBundle&, const BloomBundle&) = default;

 private:
  Codebook cb_;
  std::vector<std::uint64_t> words_;
};

// min(1, B v) over a sparse-binary-trials codebook; 0/1 weights only.
BloomBundle bundle_bloom(const Codebook& cb, const SymbolSet& v);

// Bits set in both filters.
std::uint64_t and_popcount(const BloomBundle& a, const BloomBundle& b);

// -1 / ln(1 - 1/m), evaluated through log1p.
double mtilde(std::uint64_t m);

struct BloomEstimate {
  double value = 0;        // +infinity when saturated
  bool saturated = false;  // z reached m: the filter is full and must be resized
};

// -(mtilde/k) ln(1 - z/m). Needs m >= 2, k >= 1, 0 <= z <= m.
BloomEstimate h_mk(std::uint64_t m, std::uint32_t k, double z);

BloomEstimate size_estimate(const BloomBundle& b);
BloomEstimate intersection_estimate(const BloomBundle& a, const BloomBundle& b);

// k = ceil(2 c1 ln(2/delta)/eps), m = ceil((k/eps)(n_v n_w/2 + 8 c1 n^2 + eps (n + n_w)))
// with n_w >= n_v (swapped if given the other way).
SizingResult sizing_bloom(double eps, double delta, double n, double n_v, double n_w);
SizingResult sizing_bloom(const SizingParams& params);

}  // namespace vsacap
