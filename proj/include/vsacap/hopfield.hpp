#pragma once

// Classical Hopfield memory (W = S S^T - n I, synchronous signge recall) and
// the Hopfield+- bundle S̄ V D S̄^T.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vsacap/codebook.hpp"
#include "vsacap/hypervector.hpp"
#include "vsacap/setalg.hpp"
#include "vsacap/sizing.hpp"

namespace vsacap {

// 1 for z >= 0, -1 otherwise.
constexpr std::int32_t signge(std::int64_t z) noexcept { return z >= 0 ? 1 : -1; }

class HopfieldNet {
 public:
  // Zero-diagonal symmetric weights, row-major m x m.
  HopfieldNet(std::uint64_t m, std::uint64_t n, std::vector<std::int32_t> weights);

  std::uint64_t m() const noexcept { return m_; }
  std::uint64_t n() const noexcept { return n_; }
  std::int32_t weight(std::uint64_t i, std::uint64_t j) const { return w_.at(i * m_ + j); }
  std::span<const std::int32_t> weights() const noexcept { return w_; }

  friend bool operator==(const HopfieldNet&, const HopfieldNet&) = default;

 private:
  std::uint64_t m_;
  std::uint64_t n_;
  std::vector<std::int32_t> w_;
};

// W = sum_j x_j x_j^T - n I over sign patterns of equal length.
HopfieldNet train(std::span<const Hypervector> patterns);

// Columns of W restricted to `keep`: probe coordinates outside keep contribute nothing.
class ThinnedNet {
 public:
  ThinnedNet(const HopfieldNet& net, std::vector<std::uint64_t> keep);

  std::uint64_t m() const noexcept { return m_; }
  std::span<const std::uint64_t> keep() const noexcept { return keep_; }
  // m * |keep| stored weights.
  std::size_t stored_entries() const noexcept { return w_.size(); }
  // (W y)_i summed over kept columns only.
  void apply(std::span<const std::int32_t> y, std::span<std::int64_t> out) const;

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> keep_;
  std::vector<std::int32_t> w_;  // row-major m x |keep|
};

// Throws on an empty keep set or ids >= m.
ThinnedNet thin(const HopfieldNet& net, std::vector<std::uint64_t> keep);

struct RecallResult {
  Hypervector state;
  bool converged = false;
  std::uint32_t iterations = 0;  // updates applied
};

// One synchronous update signge(W y); y has entries in {-1, 0, 1}.
Hypervector recall_step(const HopfieldNet& net, const Hypervector& y);
Hypervector recall_step(const ThinnedNet& net, const Hypervector& y);
// Iterates until the state repeats or max_iters updates were applied.
RecallResult recall(const HopfieldNet& net, const Hypervector& y, std::uint32_t max_iters = 64);
RecallResult recall(const ThinnedNet& net, const Hypervector& y, std::uint32_t max_iters = 64);

// Zeroes `erasures` and negates `flips` coordinates at seeded distinct positions.
Hypervector corrupt(const Hypervector& x, std::uint64_t erasures, std::uint64_t flips, std::uint64_t seed);

// Smallest m with m >= 4 n ln(2m/delta), by fixed-point iteration from 4 n ln(2n/delta).
SizingResult sizing_hopfield(double n, double delta);
// 2 sqrt(n ln(2m/delta)).
double probe_threshold(double n, std::uint64_t m, double delta);

class HpmBundle {
 public:
  HpmBundle(Codebook cb, std::uint64_t d_seed, std::vector<std::int64_t> matrix);

  const Codebook& codebook() const noexcept { return cb_; }
  std::uint64_t d_seed() const noexcept { return d_seed_; }
  std::uint64_t m() const noexcept { return cb_.m(); }
  // Unscaled S V D S^T, row-major; the bundle is this times 1/m.
  std::span<const std::int64_t> raw() const noexcept { return raw_; }
  double entry(std::uint64_t a, std::uint64_t b) const;
  std::vector<double> matrix() const;

 private:
  Codebook cb_;
  std::uint64_t d_seed_;
  std::vector<std::int64_t> raw_;
};

// D_jj = +-1 from the seeded diagonal stream.
int hpm_diagonal_sign(std::uint64_t d_seed, std::uint64_t j);
// M = S̄ V D S̄^T with V = diag(weights of v).
HpmBundle hpm_encode(const Codebook& cb, const SymbolSet& v, std::uint64_t d_seed);
// ||M||_F^2.
double hpm_norm_estimate(const HpmBundle& b);
// tr(M1 M2), estimating tr(X Y).
double hpm_dot_estimate(const HpmBundle& a, const HpmBundle& b);

// Tasks: store (n, delta), hpm-norm (eps, delta, d): C eps^-1 ln(d/delta)^2,
// hpm-product (eps, delta, d): C eps^-2 ln(d/delta)^2.
SizingResult sizing_hopfield_task(std::string_view task, const SizingParams& params);

}  // namespace vsacap
