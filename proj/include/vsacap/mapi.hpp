#pragma once

// MAP-I: linear bundling with (scaled) sign matrices.
//
// Bundles keep the exact integer accumulator S v; the codebook's column scale
// is applied only inside the estimators.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vsacap/codebook.hpp"
#include "vsacap/hypervector.hpp"
#include "vsacap/setalg.hpp"
#include "vsacap/sizing.hpp"

namespace vsacap {

class MapIBundle {
 public:
  // Throws std::invalid_argument if the accumulator length differs from cb.m().
  MapIBundle(Codebook cb, std::vector<std::int32_t> acc);

  const Codebook& codebook() const noexcept { return cb_; }
  bool scaled() const noexcept { return cb_.scaled(); }
  std::size_t size() const noexcept { return acc_.size(); }
  std::span<const std::int32_t> raw() const noexcept { return acc_; }

  // Square of the column scale: 1/m for sign kinds, 1/k for sparse-JL, 1 when unscaled.
  double scale_sq() const noexcept;
  // scaled-real (scale 1/sqrt(m)) when scaled, integer otherwise.
  Hypervector vector() const;

  MapIBundle operator+(const MapIBundle& other) const;
  MapIBundle operator-(const MapIBundle& other) const;
  friend bool operator==(const MapIBundle& a, const MapIBundle& b) noexcept {
    return a.cb_ == b.cb_ && a.acc_ == b.acc_;
  }

 private:
  Codebook cb_;
  std::vector<std::int32_t> acc_;
};

// S v over a sign codebook (dense-sign or explicit-sign). Weighted v allowed.
MapIBundle bundle(const Codebook& cb, const SymbolSet& v);
// P v for any JL codebook: dense-sign, explicit-sign, srht or sparse-jl.
MapIBundle sketch(const Codebook& cb, const SymbolSet& v);

// Exact integer statistics of the unscaled accumulators.
std::int64_t raw_norm_sq(const MapIBundle& b);
std::int64_t raw_dot(const MapIBundle& a, const MapIBundle& b);

// ||S̄v||^2; requires a scaled codebook.
double norm_sq_estimate(const MapIBundle& b);
// <S̄v, S̄w>; requires matching scaled codebooks.
double dot_estimate(const MapIBundle& a, const MapIBundle& b);
// dot_estimate rounded half away from zero, negatives clamped to 0.
std::uint64_t intersection_estimate(const MapIBundle& a, const MapIBundle& b);
// ||a - b||^2 (scaled when the codebook is).
double symdiff_estimate(const MapIBundle& a, const MapIBundle& b);
// <a, b> / (||a|| ||b||); 0 when either norm is 0.
double cosine_estimate(const MapIBundle& a, const MapIBundle& b);

// sum_l R^l S v_l with R the cyclic rotation of rotate().
MapIBundle encode_sequence(const Codebook& cb, const SequenceSpec& seq);
// sum over edges of the coordinate-wise product of the edge's columns.
MapIBundle encode_binding_bundle(const Codebook& cb, const BindingBundleSpec& spec);

// Tasks: norm, pairs, sequence, sequence-symbols, binding2, bindingK,
// norm-sparse-jl (also returns k), norm-srht (m rounded up to a power of two).
SizingResult sizing_mapi(std::string_view task, const SizingParams& params);

}  // namespace vsacap
