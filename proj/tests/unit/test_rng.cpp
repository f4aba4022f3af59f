#include <doctest.h>

#include <set>

#include "vsacap/rng.hpp"

using namespace vsacap::rng;

TEST_SUITE("rng") {

TEST_CASE("philox known answers") {
  // Reference vectors published with the Random123 distribution.
  constexpr auto zero = philox4x32_10({0, 0, 0, 0}, {0, 0});
  static_assert(zero[0] == 0x6627e8d5u && zero[1] == 0xe169c58du);
  CHECK(zero == Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

  const auto ones = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(ones == Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});

  const auto pi = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("version string") { CHECK(version_string() == "philox4x32-10/v1"); }

TEST_CASE("random access matches sequential draws") {
  Stream a(42, Tag::dense_sign, 7);
  const Stream b(42, Tag::dense_sign, 7);
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(a.next() == b.at(i));
  CHECK(a.position() == 100);
  CHECK(b.at(3) == b.at(3));
  CHECK(b.at(99) != b.at(98));
}

TEST_CASE("streams are separated by seed, tag and index") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {0ull, 1ull}) {
    for (auto tag : {Tag::dense_sign, Tag::sparse_trials, Tag::tie_break}) {
      for (std::uint64_t idx : {0ull, 1ull, 1ull << 40}) firsts.insert(Stream(seed, tag, idx).at(0));
    }
  }
  CHECK(firsts.size() == 18);
}

TEST_CASE("bounded draws stay in range and cover it") {
  Stream s(3, Tag::trial, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto r = s.below(7);
    REQUIRE(r < 7);
    seen.insert(r);
  }
  CHECK(seen.size() == 7);
  CHECK(s.below(1) == 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("split and fnv1a are pure") {
  static_assert(split(1, 2, 3) == split(1, 2, 3));
  CHECK(split(1, 2, 3) != split(1, 2, 4));
  CHECK(split(1, 2, 3) != split(1, 3, 2));
  // Standard FNV-1a test vectors.
  static_assert(fnv1a("") == 0xcbf29ce484222325ull);
  static_assert(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

}
