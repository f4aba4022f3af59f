#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "vsacap/codebook.hpp"

using namespace vsacap;

namespace {

Codebook make(CodebookKind kind, std::uint64_t m, std::uint64_t d, std::uint32_t k = 0, std::uint64_t seed = 11,
              bool scaled = false) {
  return Codebook(CodebookParams{kind, m, d, k, seed, scaled});
}

}  // namespace

TEST_SUITE("codebook") {

TEST_CASE("columns are pure functions of the parameters") {
  for (auto kind : {CodebookKind::dense_sign, CodebookKind::sparse_binary_trials, CodebookKind::sparse_binary_exact,
                    CodebookKind::sparse_jl, CodebookKind::srht}) {
    CAPTURE(to_string(kind));
    const auto a = make(kind, 128, 40, 6);
    const auto b = make(kind, 128, 40, 6);
    CHECK(a == b);
    for (std::uint64_t j = 0; j < 40; j += 7) CHECK(a.atomic(j) == b.atomic(j));
    // Column j is unaffected by d.
    const auto wide = make(kind, 128, 4000, 6);
    if (kind != CodebookKind::srht) CHECK(wide.atomic(5) == a.atomic(5));
    const auto other = make(kind, 128, 40, 6, 12);
    CHECK(other.atomic(3) != a.atomic(3));
  }
}

TEST_CASE("materialize agrees with per-column generation") {
  for (auto kind : {CodebookKind::dense_sign, CodebookKind::sparse_binary_trials, CodebookKind::sparse_binary_exact,
                    CodebookKind::sparse_jl, CodebookKind::srht}) {
    CAPTURE(to_string(kind));
    const auto cb = make(kind, 256, 70, 5);
    const auto full = cb.materialize();
    std::vector<std::int32_t> col(256);
    for (std::uint64_t j = 0; j < 70; ++j) {
      cb.column_into(j, col);
      for (std::uint64_t i = 0; i < 256; ++i) REQUIRE(full[j * 256 + i] == col[i]);
    }
  }
}

TEST_CASE("accumulate matches column_into") {
  for (auto kind : {CodebookKind::dense_sign, CodebookKind::sparse_binary_exact, CodebookKind::sparse_jl,
                    CodebookKind::srht}) {
    const auto cb = make(kind, 64, 10, 3);
    std::vector<std::int32_t> acc(64, 0), col(64);
    cb.accumulate(4, 3, acc);
    cb.column_into(4, col);
    for (std::size_t i = 0; i < 64; ++i) CHECK(acc[i] == 3 * col[i]);
  }
}

TEST_CASE("sparsity") {
  const auto exact = make(CodebookKind::sparse_binary_exact, 50, 200, 9);
  const auto trials = make(CodebookKind::sparse_binary_trials, 50, 200, 9);
  const auto jl = make(CodebookKind::sparse_jl, 50, 200, 9);
  bool saw_collision = false;
  for (std::uint64_t j = 0; j < 200; ++j) {
    const auto a = exact.atomic(j);
    CHECK(std::accumulate(a.raw().begin(), a.raw().end(), 0) == 9);
    const auto b = trials.atomic(j);
    const int ones = std::accumulate(b.raw().begin(), b.raw().end(), 0);
    CHECK(ones <= 9);
    CHECK(ones >= 1);
    saw_collision |= ones < 9;
    const auto c = jl.atomic(j);
    int nnz = 0;
    for (auto v : c.raw()) nnz += v != 0;
    CHECK(nnz == 9);
  }
  // With k=9 trials over m=50, repeats are common.
  CHECK(saw_collision);
  CHECK_THROWS(make(CodebookKind::sparse_binary_exact, 5, 3, 6));
  CHECK_THROWS(make(CodebookKind::sparse_binary_trials, 5, 3, 0));
}

TEST_CASE("dense columns are near orthogonal") {
  const std::uint64_t m = 4096;
  const auto cb = make(CodebookKind::dense_sign, m, 20);
  for (std::uint64_t a = 0; a < 20; ++a) {
    const auto x = cb.atomic(a);
    CHECK(raw_dot(x.raw(), x.raw()) == static_cast<std::int64_t>(m));
    for (std::uint64_t b = a + 1; b < 20; ++b) {
      // 6 sigma of a sum of m independent signs.
      CHECK(std::abs(raw_dot(x.raw(), cb.atomic(b).raw())) < 6 * 64);
    }
  }
}

TEST_CASE("scaled columns have unit norm") {
  const auto dense = make(CodebookKind::dense_sign, 300, 4, 0, 2, true);
  CHECK(dot(dense.atomic(1), dense.atomic(1)) == doctest::Approx(1.0));
  CHECK(dense.atomic(1).domain() == Domain::scaled_real);
  const auto jl = make(CodebookKind::sparse_jl, 300, 4, 16, 2, true);
  CHECK(dot(jl.atomic(1), jl.atomic(1)) == doctest::Approx(1.0));
}

TEST_CASE("srht rows are distinct and entries are signed Hadamard entries") {
  const auto cb = make(CodebookKind::srht, 64, 300);
  CHECK(cb.hadamard_order() == 512);
  const auto rows = cb.srht_rows();
  CHECK(rows.size() == 64);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1] < rows[i]);
  CHECK(rows.back() < 512);
  const auto c0 = cb.atomic(0);
  const auto c1 = cb.atomic(1);
  for (std::uint64_t i = 0; i < 64; ++i) {
    CHECK(cb.srht_entry(i, 1) == c1.raw(i));
    CHECK(c0.raw(i) == c0.raw(0));  // column 0 of H is all ones
  }
  CHECK_THROWS(make(CodebookKind::srht, 60, 10));
  CHECK(hadamard_entry(3, 1) == -1);
  CHECK(hadamard_entry(3, 3) == 1);
}

TEST_CASE("json round trip and fingerprint") {
  const auto cb = make(CodebookKind::sparse_jl, 128, 30, 4, 99, true);
  const auto back = Codebook::from_json(cb.to_json());
  CHECK(back == cb);
  CHECK(back.atomic(7) == cb.atomic(7));
  auto j = cb.to_json();
  j["rng_version"] = "mt19937/v0";
  CHECK_THROWS(Codebook::from_json(j));
  CHECK(make(CodebookKind::dense_sign, 128, 30, 0, 1).fingerprint() !=
        make(CodebookKind::dense_sign, 128, 30, 0, 2).fingerprint());

  const auto ex = Codebook::from_columns({{1, 1}, {1, -1}});
  CHECK(ex.m() == 2);
  CHECK(ex.d() == 2);
  CHECK(ex.atomic(1) == Hypervector(Domain::sign, {1, -1}));
  CHECK(Codebook::from_json(ex.to_json()) == ex);
  CHECK_THROWS(Codebook::from_columns({{1, 0}}));
}

TEST_CASE("out of range symbols throw") {
  const auto cb = make(CodebookKind::dense_sign, 16, 4);
  CHECK_THROWS_AS(cb.atomic(4), std::out_of_range);
}

TEST_CASE("tie signs are seeded fair coins") {
  CHECK(tie_sign(5, 0, 0, 0) == 1);
  CHECK(tie_sign(-2, 0, 0, 0) == -1);
  int plus = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) plus += tie_sign(0, 77, 1, i) == 1;
  CHECK(plus > 4700);
  CHECK(plus < 5300);
  CHECK(tie_sign(0, 77, 1, 5) == tie_sign(0, 77, 1, 5));
}

}
