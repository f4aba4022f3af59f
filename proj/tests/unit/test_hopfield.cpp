#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "vsacap/hopfield.hpp"
#include "vsacap/rng.hpp"

using namespace vsacap;

namespace {

std::vector<Hypervector> random_patterns(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  const Codebook cb(CodebookParams{CodebookKind::dense_sign, m, n, 0, seed, false});
  std::vector<Hypervector> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(cb.atomic(j));
  return out;
}

}  // namespace

TEST_SUITE("hopfield") {

TEST_CASE("training") {
  const std::vector<Hypervector> p{Hypervector(Domain::sign, {1, 1, -1}), Hypervector(Domain::sign, {1, -1, 1})};
  const auto net = train(p);
  CHECK(net.weight(0, 1) == 0);
  CHECK(net.weight(1, 2) == -2);
  const auto rnd = train(random_patterns(7, 50, 1));
  for (std::uint64_t i = 0; i < 50; ++i) {
    CHECK(rnd.weight(i, i) == 0);
    for (std::uint64_t j = 0; j < 50; ++j) CHECK(rnd.weight(i, j) == rnd.weight(j, i));
  }
  const std::vector<Hypervector> bad{Hypervector(Domain::integer, {1, 0})};
  CHECK_THROWS(train(bad));
}

TEST_CASE("recall of an erased probe") {
  const Hypervector x(Domain::sign, {1, 1, -1, 1});
  const std::vector<Hypervector> p{x};
  const auto net = train(p);
  CHECK(recall_step(net, Hypervector(Domain::integer, {1, 1, 0, 0})) == x);
  const auto r = recall(net, x);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.state == x);
  CHECK_THROWS(recall_step(net, Hypervector(Domain::integer, {2, 0, 0, 0})));
  // signge maps 0 to +1.
  CHECK(recall_step(net, Hypervector(Domain::integer, {0, 0, 0, 0})) == Hypervector(Domain::sign, {1, 1, 1, 1}));
}

TEST_CASE("corruption counts") {
  const auto x = random_patterns(1, 200, 3).front();
  CHECK(corrupt(x, 0, 0, 1).raw().size() == 200);
  const auto same = corrupt(x, 0, 0, 1);
  CHECK(std::equal(same.raw().begin(), same.raw().end(), x.raw().begin()));
  const auto erased = corrupt(x, 200, 0, 1);
  for (auto v : erased.raw()) CHECK(v == 0);
  for (std::uint64_t e : {0u, 13u, 90u}) {
    for (std::uint64_t f : {0u, 7u, 50u}) {
      const auto y = corrupt(x, e, f, e * 100 + f);
      CHECK(raw_dot(y.raw(), x.raw()) == static_cast<std::int64_t>(200 - e - 2 * f));
    }
  }
  CHECK_THROWS(corrupt(x, 150, 51, 0));
}

TEST_CASE("stored patterns are recovered") {
  const auto s = sizing_hopfield(4, 0.05);
  const auto patterns = random_patterns(4, s.m, 9);
  const auto net = train(patterns);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(recall_step(net, patterns[j]) == patterns[j]);
    CHECK(recall(net, corrupt(patterns[j], s.m / 2, 0, j)).state == patterns[j]);
  }
}

TEST_CASE("thinning") {
  const auto patterns = random_patterns(3, 120, 4);
  const auto net = train(patterns);
  std::vector<std::uint64_t> all(120);
  for (std::uint64_t i = 0; i < 120; ++i) all[i] = i;
  const auto full = thin(net, all);
  const auto probe = corrupt(patterns[1], 30, 5, 2);
  CHECK(recall_step(full, probe) == recall_step(net, probe));
  CHECK(full.stored_entries() == 120u * 120u);
  CHECK_THROWS(thin(net, {}));
  CHECK_THROWS(thin(net, {120}));
  const auto half = thin(net, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(half.stored_entries() == 1200u);
}

TEST_CASE("sizing") {
  const auto r = sizing_hopfield(10, 0.01);
  CHECK(r.m == 457);
  CHECK(static_cast<double>(r.m) >= 40 * std::log(200.0 * r.m));
  CHECK(static_cast<double>(r.m - 1) < 40 * std::log(200.0 * (r.m - 1)));
  CHECK(sizing_hopfield(10, 0.5).m < r.m);
  CHECK(probe_threshold(10, 457, 0.01) == doctest::Approx(2 * std::sqrt(10 * std::log(91400.0))));
  CHECK_THROWS(sizing_hopfield(10, 1.0));

  SizingParams p;
  p.eps = 0.5;
  p.delta = 0.05;
  p.d = 512;
  CHECK(sizing_hopfield_task("hpm-norm", p).m == 171);
  CHECK(sizing_hopfield_task("hpm-product", p).m_exact == doctest::Approx(2 * sizing_hopfield_task("hpm-norm", p).m_exact));
}

TEST_CASE("hopfield plus minus") {
  const Codebook cb(CodebookParams{CodebookKind::dense_sign, 64, 30, 0, 2, true});
  CHECK(hpm_norm_estimate(hpm_encode(cb, SymbolSet(30), 1)) == 0.0);
  const SymbolSet x(30, {1, 4, 9});
  const auto b = hpm_encode(cb, x, 1);
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t c = 0; c < 64; ++c) CHECK(b.entry(a, c) == b.entry(c, a));
  }
  // Orthonormal columns: the estimate is exact.
  const auto had = Codebook::from_columns({{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}}, true);
  SymbolSet v(4);
  v.set(0, 2);
  v.set(2, 1);
  v.set(3, 3);
  CHECK(hpm_norm_estimate(hpm_encode(had, v, 5)) == 14.0);
  const auto c = hpm_encode(had, SymbolSet(4, {2, 3}), 5);
  CHECK(hpm_dot_estimate(hpm_encode(had, v, 5), c) == 4.0);

  // Negating D leaves the norm unchanged; seeds whose diagonals are negatives
  // are found by search.
  std::uint64_t neg = 0;
  for (std::uint64_t s = 2; s < 200000; ++s) {
    bool all = true;
    for (std::uint64_t j : {1u, 4u, 9u}) all &= hpm_diagonal_sign(s, j) == -hpm_diagonal_sign(1, j);
    if (all) {
      neg = s;
      break;
    }
  }
  REQUIRE(neg != 0);
  CHECK(hpm_norm_estimate(hpm_encode(cb, x, neg)) == hpm_norm_estimate(b));
  CHECK_THROWS(hpm_dot_estimate(b, hpm_encode(cb, x, 2)));
  CHECK_THROWS(hpm_encode(Codebook(CodebookParams{CodebookKind::dense_sign, 8, 3, 0, 1, false}), SymbolSet(3), 1));
}

}
