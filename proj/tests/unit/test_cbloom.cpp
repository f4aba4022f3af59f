#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vsacap/cbloom.hpp"
#include "vsacap/rng.hpp"

using namespace vsacap;

namespace {

Codebook exact(std::uint64_t m, std::uint64_t d, std::uint32_t k, std::uint64_t seed = 4) {
  return Codebook(CodebookParams{CodebookKind::sparse_binary_exact, m, d, k, seed, false});
}

SymbolSet random_weighted(std::uint64_t d, std::uint64_t seed) {
  rng::Stream s(seed, rng::Tag::instance, 0);
  SymbolSet v(d);
  const auto n = 1 + s.below(8);
  for (std::uint64_t i = 0; i < n; ++i) v.add(s.below(d), static_cast<std::uint32_t>(1 + s.below(3)));
  return v;
}

}  // namespace

TEST_SUITE("cbloom") {

TEST_CASE("bundling") {
  const auto cb = exact(128, 50, 5);
  const auto single = bundle_count(cb, SymbolSet(50, {3}));
  const auto col = cb.atomic(3);
  CHECK(std::equal(single.counts().begin(), single.counts().end(), col.raw().begin()));
  SymbolSet two(50);
  two.set(3, 2);
  const auto doubled = bundle_count(cb, two);
  for (std::size_t i = 0; i < 128; ++i) CHECK(doubled.counts()[i] == 2 * cb.atomic(3).raw(i));
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto v = random_weighted(50, t);
    const auto w = random_weighted(50, t + 1000);
    CHECK(bundle_count(cb, v).mass() == 5 * v.l1_norm());
    CHECK(bundle_count(cb, v + w) == bundle_count(cb, v) + bundle_count(cb, w));
  }
  CHECK_THROWS(bundle_count(Codebook(CodebookParams{CodebookKind::sparse_binary_trials, 64, 50, 2, 1, false}),
                            SymbolSet(50)));
}

TEST_CASE("one sided estimates") {
  const auto cb = exact(64, 40, 3);
  for (std::uint64_t t = 0; t < 500; ++t) {
    const auto v = random_weighted(40, t);
    const auto w = random_weighted(40, t + 7777);
    const auto bv = bundle_count(cb, v);
    const auto bw = bundle_count(cb, w);
    CHECK(raw_wedgedot(bv, bw) >= 3 * wedgedot(v, w));
    CHECK(l1_distance_estimate(bv, bw, v.l1_norm(), w.l1_norm()) <= static_cast<double>(l1_distance(v, w)));
  }
}

TEST_CASE("worked examples") {
  const auto cb = exact(1024, 3, 4);
  SymbolSet v(3), w(3);
  v.set(0, 1);
  v.set(1, 2);
  w.set(1, 2);
  w.set(2, 3);
  const auto bv = bundle_count(cb, v);
  const auto bw = bundle_count(cb, w);
  CHECK(generalized_intersection_estimate(bv, bv) == 3.0);
  CHECK(l1_distance_estimate(bv, bv, 3, 3) == 0.0);
  CHECK(l1_distance_estimate(bv, bw, 3, 5) <= 4.0);
  const auto empty = bundle_count(cb, SymbolSet(3));
  CHECK(l1_distance_estimate(bv, empty, 3, 0) == 3.0);
}

TEST_CASE("disjoint singletons rarely collide") {
  double total = 0;
  for (std::uint64_t t = 0; t < 400; ++t) {
    const auto cb = exact(8192, 2, 8, rng::split(3, t));
    total += generalized_intersection_estimate(bundle_count(cb, SymbolSet(2, {0})), bundle_count(cb, SymbolSet(2, {1})));
  }
  CHECK(total / 400 <= 0.05);
}

TEST_CASE("sizing") {
  const auto r = sizing_cbloom(1.0, std::exp(-3.0), 1, 2, 3);
  CHECK(r.k == 2u);
  CHECK(r.m == static_cast<std::uint64_t>(std::ceil(12 * std::numbers::pi * std::numbers::pi * 2 * 6)));
  CHECK(sizing_cbloom(1.0, std::exp(-3.0), 1, 0, 3).m == 2);
  const auto a = sizing_cbloom(1.0, 0.05, 1, 3, 3);
  const auto b = sizing_cbloom(0.5, 0.05, 1, 3, 3);
  // k doubles exactly here (3 -> 6), so m quadruples.
  CHECK(*a.k * 2 == *b.k);
  CHECK(b.m_exact == doctest::Approx(4 * a.m_exact));
  CHECK_THROWS(sizing_cbloom(-1, 0.05, 1, 1, 1));
}

}
