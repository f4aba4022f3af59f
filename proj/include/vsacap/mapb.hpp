#pragma once

// MAP-B: sign-thresholded bundling and its decision tests.
//
// Zero sums are resolved by a seeded fair coin keyed on
// (tie seed, fold step, coordinate), so a bundle is reproducible no matter
// how its coordinates are evaluated.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vsacap/codebook.hpp"
#include "vsacap/hypervector.hpp"
#include "vsacap/setalg.hpp"
#include "vsacap/sizing.hpp"

namespace vsacap {

class MapBBundle {
 public:
  // `vector` must be in the sign domain.
  MapBBundle(Hypervector vector, std::optional<Codebook> cb, std::uint64_t tie_seed, std::uint32_t depth);

  const Hypervector& vector() const noexcept { return x_; }
  std::size_t size() const noexcept { return x_.size(); }
  const std::optional<Codebook>& codebook() const noexcept { return cb_; }
  std::uint64_t tie_seed() const noexcept { return tie_seed_; }
  // 1 for a single bundle_sign; r after r chained bundles.
  std::uint32_t depth() const noexcept { return depth_; }

  friend bool operator==(const MapBBundle&, const MapBBundle&) = default;

 private:
  Hypervector x_;
  std::optional<Codebook> cb_;
  std::uint64_t tie_seed_;
  std::uint32_t depth_;
};

struct MembershipResult {
  bool in = false;
  std::int64_t score = 0;
  double threshold = 0;
  bool depth_warning = false;  // queried bundle was built by more than one fold
};

struct KeyValueSpec {
  std::uint64_t d = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (key, value)

  // Keys and values in [d], keys unique, key set disjoint from value set.
  void validate() const;
  std::set<std::uint64_t> keys() const;
  std::set<std::uint64_t> values() const;
};

struct MapBSequenceBundle {
  MapBBundle bundle;
  std::uint64_t length;  // L
};

struct MapBKvBundle {
  MapBBundle bundle;
  std::set<std::uint64_t> keys;
  std::set<std::uint64_t> values;
};

// Default tie seed for a bundle of v: a hash of the codebook seed and the set.
std::uint64_t default_tie_seed(const Codebook& cb, const SymbolSet& v);

// sign(S v) over a dense-sign (or explicit-sign) codebook; 0/1 weights only.
MapBBundle bundle_sign(const Codebook& cb, const SymbolSet& v, std::optional<std::uint64_t> tie_seed = {});

// sqrt(2 m ln(2d/delta)).
double membership_threshold(std::uint64_t m, std::uint64_t d, double delta);
// sqrt(2 m ln(2/delta)).
double empty_intersection_threshold(std::uint64_t m, double delta);
// 2 sqrt(m ln(L d/delta)).
double sequence_threshold(std::uint64_t m, std::uint64_t L, std::uint64_t d, double delta);
// 2 sqrt(m ln(d/delta)).
double kv_threshold(std::uint64_t m, std::uint64_t d, double delta);

// in iff <x, S_j> >= membership_threshold.
MembershipResult membership_test(const MapBBundle& b, std::uint64_t j, double delta);

struct EmptinessResult {
  bool nonempty = false;
  std::int64_t score = 0;
  double threshold = 0;
};
// nonempty iff <x, y> >= empty_intersection_threshold.
EmptinessResult empty_intersection_test(const MapBBundle& a, const MapBBundle& b, double delta);

// x <- x1, then x <- sign(x + xj) for j = 2..r. Fold j draws ties at step j-1.
MapBBundle iterated_bundle(std::span<const Hypervector> vectors, std::uint64_t tie_seed);

// sign(sum_l R^l S v_l); 0/1 weights only.
MapBSequenceBundle bundle_sequence_sign(const Codebook& cb, const SequenceSpec& seq,
                                        std::optional<std::uint64_t> tie_seed = {});
// j indexes [L*d]: block j / d, symbol j % d. The symbol's column is rotated to
// the block before scoring.
MembershipResult sequence_membership_test(const MapBSequenceBundle& b, std::uint64_t j, double delta);

// sign(sum over pairs of S_q (.) S_w).
MapBKvBundle bundle_kv_sign(const Codebook& cb, const KeyValueSpec& spec, std::optional<std::uint64_t> tie_seed = {});
// Throws std::invalid_argument if q is a stored value or w a stored key.
MembershipResult kv_membership_test(const MapBKvBundle& b, std::uint64_t q, std::uint64_t w, double delta);

// Tasks: member (n, d), sequence-member (n, L, d), kv-member (n, d),
// empty-intersection (size_x, size_y).
SizingResult sizing_mapb(std::string_view task, const SizingParams& params);

}  // namespace vsacap
