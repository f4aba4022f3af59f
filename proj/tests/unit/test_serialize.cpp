#include <doctest.h>

#include <sstream>

#include "vsacap/serialize.hpp"

using namespace vsacap;

namespace {

AnyBundle round_trip(const AnyBundle& b) {
  std::stringstream ss;
  write_bundle(ss, b);
  return read_bundle(ss);
}

Codebook cb(CodebookKind kind, std::uint64_t m, std::uint32_t k = 0, bool scaled = false) {
  return Codebook(CodebookParams{kind, m, 100, k, 42, scaled});
}

const SymbolSet kSet(100, {1, 5, 17, 99});

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("mapi bundle round trip") {
    const AnyBundle b = bundle(cb(CodebookKind::dense_sign, 77, 0, true), kSet);
    CHECK(std::get<MapIBundle>(round_trip(b)) == std::get<MapIBundle>(b));
  }

  TEST_CASE("mapb bundle round trip keeps tie seed and depth") {
    const auto c = cb(CodebookKind::dense_sign, 130);
    const AnyBundle b = bundle_sign(c, kSet, 9);
    const auto back = std::get<MapBBundle>(round_trip(b));
    CHECK(back == std::get<MapBBundle>(b));
    CHECK(back.tie_seed() == 9);
    const std::vector<Hypervector> xs = {c.atomic(0), c.atomic(1), c.atomic(2)};
    const AnyBundle deep = iterated_bundle(xs, 5);
    CHECK(std::get<MapBBundle>(round_trip(deep)) == std::get<MapBBundle>(deep));
  }

  TEST_CASE("bloom bundle round trip") {
    const AnyBundle b = bundle_bloom(cb(CodebookKind::sparse_binary_trials, 200, 3), kSet);
    CHECK(std::get<BloomBundle>(round_trip(b)) == std::get<BloomBundle>(b));
  }

  TEST_CASE("count bundle round trip at every width") {
    const auto c = cb(CodebookKind::sparse_binary_exact, 50, 4);
    for (std::uint32_t w : {1u, 300u, 70000u}) {
      SymbolSet v(100);
      v.set(3, w);
      v.set(8, 2);
      const AnyBundle b = bundle_count(c, v);
      CHECK(std::get<CountBundle>(round_trip(b)) == std::get<CountBundle>(b));
    }
  }

  TEST_CASE("hopfield-pm bundle round trip") {
    const auto b = hpm_encode(cb(CodebookKind::dense_sign, 16, 0, true), kSet, 3);
    const auto back = std::get<HpmBundle>(round_trip(b));
    CHECK(std::equal(back.raw().begin(), back.raw().end(), b.raw().begin(), b.raw().end()));
    CHECK(back.d_seed() == 3);
  }

  TEST_CASE("network round trip") {
    const auto c = cb(CodebookKind::dense_sign, 40);
    const std::vector<Hypervector> ps = {c.atomic(0), c.atomic(1), c.atomic(2)};
    const auto net = train(ps);
    std::stringstream ss;
    write_net(ss, net);
    CHECK(read_net(ss) == net);
  }

  TEST_CASE("corrupt input is rejected") {
    std::stringstream ss;
    write_bundle(ss, bundle(cb(CodebookKind::dense_sign, 20), kSet));
    auto bytes = ss.str();
    {
      std::stringstream bad(bytes.substr(0, bytes.size() - 3));
      CHECK_THROWS_AS(read_bundle(bad), IoError);
    }
    {
      auto flipped = bytes;
      flipped[20] ^= 1;  // inside the fingerprint
      std::stringstream bad(flipped);
      CHECK_THROWS_AS(read_bundle(bad), IoError);
    }
    {
      std::stringstream bad("VSAH");
      CHECK_THROWS_AS(read_bundle(bad), IoError);
    }
    CHECK_THROWS_AS(load_bundle("/nonexistent/file.vsab"), IoError);
  }
}
