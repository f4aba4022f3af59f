#include "vsacap/rng.hpp"

namespace vsacap::rng {

std::string version_string() {
  return std::string(kAlgorithm) + "/v" + std::to_string(kVersion);
}

Stream::Stream(std::uint64_t seed, Tag tag, std::uint64_t index) noexcept : index_(index) {
  const std::uint64_t k = mix64(seed ^ mix64(static_cast<std::uint64_t>(tag)));
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

std::uint64_t Stream::at(std::uint64_t draw) const noexcept {
  const std::uint64_t block = draw >> 1;
  if (block != cached_block_) {
    cached_ = philox4x32_10({static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32),
                             static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)},
                            key_);
    cached_block_ = block;
  }
  const std::size_t lane = (draw & 1u) * 2;
  return static_cast<std::uint64_t>(cached_[lane]) | (static_cast<std::uint64_t>(cached_[lane + 1]) << 32);
}

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t Stream::below(std::uint64_t n) noexcept {
  u128 product = static_cast<u128>(next()) * n;
  auto low = static_cast<std::uint64_t>(product);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      product = static_cast<u128>(next()) * n;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace vsacap::rng
