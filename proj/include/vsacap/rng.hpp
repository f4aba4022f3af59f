#pragma once

// Counter-based random streams.
//
// Every random quantity in the library is a pure function of
// (seed, tag, index, draw). The generator is Philox4x32-10: the 128-bit
// counter carries (index, draw block) and the 64-bit key is derived from
// (seed, tag). Any draw can therefore be computed without touching any other.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace vsacap::rng {

inline constexpr std::string_view kAlgorithm = "philox4x32-10";
inline constexpr int kVersion = 1;

// "philox4x32-10/v1"; recorded in experiment output and serialized codebooks.
std::string version_string();

// Domain-separation tags. Values are part of the stream definition; never renumber.
enum class Tag : std::uint64_t {
  dense_sign = 1,
  sparse_trials = 2,
  sparse_exact = 3,
  srht_diagonal = 4,
  srht_rows = 5,
  sparse_jl = 6,
  tie_break = 7,
  hpm_diagonal = 8,
  corruption = 9,
  trial = 10,
  instance = 11,
};

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

constexpr Counter philox4x32_10(Counter ctr, Key key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derived seed for a child stream: split(parent, a, b). Pure and order-free,
// so per-trial seeds do not depend on scheduling.
constexpr std::uint64_t split(std::uint64_t parent, std::uint64_t a, std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(parent ^ 0x5851f42d4c957f2dull) ^ a) + b);
}

// 64-bit FNV-1a, used for cell ids and codebook fingerprints.
constexpr std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

class Stream {
 public:
  Stream(std::uint64_t seed, Tag tag, std::uint64_t index) noexcept;

  // Random access to the draw-th 64-bit word of this stream.
  std::uint64_t at(std::uint64_t draw) const noexcept;

  // Sequential interface over the same words.
  std::uint64_t next() noexcept { return at(position_++); }
  std::uint64_t position() const noexcept { return position_; }

  // Uniform on [0, n), n >= 1; Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int sign() noexcept { return (next() & 1u) ? 1 : -1; }

 private:
  Key key_{};
  std::uint64_t index_ = 0;
  std::uint64_t position_ = 0;
  mutable std::uint64_t cached_block_ = ~std::uint64_t{0};
  mutable Counter cached_{};
};

}  // namespace vsacap::rng
