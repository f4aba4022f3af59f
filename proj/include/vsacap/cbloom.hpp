#pragma once

// Counting-Bloom bundles: additive sparse bundling, generalized intersection
// through coordinate minima, and l1 distance.

#include <cstdint>
#include <span>
#include <vector>

#include "vsacap/codebook.hpp"
#include "vsacap/hypervector.hpp"
#include "vsacap/setalg.hpp"
#include "vsacap/sizing.hpp"

namespace vsacap {

class CountBundle {
 public:
  // Zero counts over a sparse-binary-exact codebook.
  explicit CountBundle(Codebook cb);
  CountBundle(Codebook cb, std::vector<std::int32_t> counts);

  const Codebook& codebook() const noexcept { return cb_; }
  std::uint64_t m() const noexcept { return cb_.m(); }
  std::uint32_t k() const noexcept { return cb_.k(); }
  std::span<const std::int32_t> counts() const noexcept { return counts_; }
  std::uint64_t mass() const noexcept;

  Hypervector vector() const { return Hypervector(Domain::count, counts_); }

  CountBundle operator+(const CountBundle& other) const;
  friend bool operator==(const CountBundle&, const CountBundle&) = default;

 private:
  Codebook cb_;
  std::vector<std::int32_t> counts_;
};

// B v; weighted v allowed.
CountBundle bundle_count(const Codebook& cb, const SymbolSet& v);

// sum_i min(x_i, y_i), exact.
std::uint64_t raw_wedgedot(const CountBundle& a, const CountBundle& b);
// (1/k) sum_i min(x_i, y_i); never below the true wedgedot.
double generalized_intersection_estimate(const CountBundle& a, const CountBundle& b);
// ||v||_1 + ||w||_1 - 2 * generalized_intersection_estimate; never above the true distance.
double l1_distance_estimate(const CountBundle& a, const CountBundle& b, std::uint64_t v_l1, std::uint64_t w_l1);

// k = ceil((2 K_b/3) ln(1/delta)/eps), m = ceil(12 pi^2 k n_v n_w / eps).
SizingResult sizing_cbloom(double eps, double delta, double K_b, double n_v, double n_w);
SizingResult sizing_cbloom(const SizingParams& params);

}  // namespace vsacap
