#include <doctest.h>

#include <cmath>
#include <vector>

#include "vsacap/mapi.hpp"
#include "vsacap/rng.hpp"

using namespace vsacap;

namespace {

Codebook dense(std::uint64_t m, std::uint64_t d, std::uint64_t seed = 5, bool scaled = true) {
  return Codebook(CodebookParams{CodebookKind::dense_sign, m, d, 0, seed, scaled});
}

SymbolSet random_set(std::uint64_t d, std::size_t n, std::uint64_t seed) {
  rng::Stream s(seed, rng::Tag::instance, 0);
  SymbolSet out(d);
  while (out.support_size() < n) out.set(s.below(d), 1);
  return out;
}

}  // namespace

TEST_SUITE("mapi") {

TEST_CASE("hand computed two-column codebook") {
  const auto unscaled = Codebook::from_columns({{1, 1}, {1, -1}});
  const auto b = bundle(unscaled, SymbolSet(2, {0, 1}));
  CHECK(std::vector<std::int32_t>(b.raw().begin(), b.raw().end()) == std::vector<std::int32_t>{2, 0});
  CHECK_THROWS(norm_sq_estimate(b));

  const auto scaled = Codebook::from_columns({{1, 1}, {1, -1}}, true);
  CHECK(norm_sq_estimate(bundle(scaled, SymbolSet(2, {0, 1}))) == 2.0);
  const auto e0 = bundle(scaled, SymbolSet(2, {0}));
  const auto e1 = bundle(scaled, SymbolSet(2, {1}));
  CHECK(dot_estimate(e0, e1) == 0.0);
  CHECK(intersection_estimate(e0, e1) == 0);
  CHECK(symdiff_estimate(e0, e1) == 2.0);
  CHECK(cosine_estimate(e0, e1) == 0.0);
  CHECK(symdiff_estimate(e0, e0) == 0.0);
  CHECK(cosine_estimate(e0, e0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("basis and zero bundles") {
  const auto cb = dense(300, 50);
  const auto b = bundle(cb, SymbolSet(50, {7}));
  CHECK(b.vector() == cb.atomic(7));
  CHECK(norm_sq_estimate(b) == 1.0);
  CHECK(dot_estimate(b, b) == 1.0);
  const auto zero = bundle(cb, SymbolSet(50));
  CHECK(norm_sq_estimate(zero) == 0.0);
  CHECK(cosine_estimate(zero, b) == 0.0);
}

TEST_CASE("linearity and polarization are exact") {
  const auto cb = dense(1024, 500);
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto v = random_set(500, 1 + t, 2 * t);
    auto w = random_set(500, 3 + 2 * t, 2 * t + 1);
    w.add(t, 2);
    const auto bv = bundle(cb, v);
    const auto bw = bundle(cb, w);
    const auto sum = bv + bw;
    CHECK(sum == bundle(cb, v + w));
    CHECK(2 * raw_dot(bv, bw) == raw_norm_sq(sum) - raw_norm_sq(bv) - raw_norm_sq(bw));
    // m is a power of two, so the scaled identity holds in doubles too.
    CHECK(2 * dot_estimate(bv, bw) == norm_sq_estimate(sum) - norm_sq_estimate(bv) - norm_sq_estimate(bw));
  }
}

TEST_CASE("intersection rounding") {
  const auto cb = dense(4096, 1000);
  const SymbolSet x(1000, {1, 2, 3, 4, 5});
  const SymbolSet y(1000, {4, 5, 6});
  CHECK(intersection_estimate(bundle(cb, x), bundle(cb, y)) == 2);
  CHECK(std::abs(dot_estimate(bundle(cb, x), bundle(cb, y)) - 2.0) < 0.5);
}

TEST_CASE("codebook and kind errors") {
  const auto a = dense(64, 10, 1);
  const auto b = dense(64, 10, 2);
  CHECK_THROWS(dot_estimate(bundle(a, SymbolSet(10, {1})), bundle(b, SymbolSet(10, {1}))));
  const Codebook sparse(CodebookParams{CodebookKind::sparse_binary_exact, 64, 10, 4, 1, true});
  CHECK_THROWS(bundle(sparse, SymbolSet(10, {1})));
  CHECK_THROWS(sketch(sparse, SymbolSet(10, {1})));
  const Codebook srht(CodebookParams{CodebookKind::srht, 64, 10, 0, 1, true});
  CHECK_THROWS(bundle(srht, SymbolSet(10, {1})));
  CHECK(norm_sq_estimate(sketch(srht, SymbolSet(10, {1}))) == 1.0);
  CHECK_THROWS(bundle(a, SymbolSet(11, {1})));
}

TEST_CASE("sparse jl sketch") {
  const Codebook cb(CodebookParams{CodebookKind::sparse_jl, 512, 100, 16, 3, true});
  CHECK(norm_sq_estimate(sketch(cb, SymbolSet(100, {9}))) == doctest::Approx(1.0));
  double total = 0;
  for (std::uint64_t t = 0; t < 50; ++t) total += norm_sq_estimate(sketch(cb, random_set(100, 10, t)));
  CHECK(total / 50 == doctest::Approx(10.0).epsilon(0.1));
}

TEST_CASE("sequence encoding") {
  const auto cb = dense(256, 30);
  const SequenceSpec one{{SymbolSet(30, {1, 4})}};
  CHECK(encode_sequence(cb, one) == bundle(cb, SymbolSet(30, {1, 4})));
  const SequenceSpec empty{{SymbolSet(30), SymbolSet(30), SymbolSet(30)}};
  CHECK(raw_norm_sq(encode_sequence(cb, empty)) == 0);
  // Position l carries R^l S v_l.
  const SequenceSpec two{{SymbolSet(30), SymbolSet(30, {3})}};
  const auto enc = encode_sequence(cb, two);
  CHECK(enc.vector() == rotate(cb.atomic(3), {1}));
  const Codebook sparse(CodebookParams{CodebookKind::sparse_binary_exact, 64, 30, 4, 1, false});
  CHECK_THROWS(encode_sequence(sparse, one));
}

TEST_CASE("rotated positions are independent") {
  // 2x2 contingency of (S v0)_0 and (R S v1)_0 over 10^4 seeds.
  double table[2][2] = {{0, 0}, {0, 0}};
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const auto cb = dense(64, 4, rng::split(99, t), false);
    const auto a = encode_sequence(cb, SequenceSpec{{SymbolSet(4, {0}), SymbolSet(4)}});
    const auto b = encode_sequence(cb, SequenceSpec{{SymbolSet(4), SymbolSet(4, {1})}});
    table[a.raw()[0] > 0][b.raw()[0] > 0] += 1;
  }
  double chi2 = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double expected = (table[i][0] + table[i][1]) * (table[0][j] + table[1][j]) / trials;
      chi2 += (table[i][j] - expected) * (table[i][j] - expected) / expected;
    }
  }
  // 0.999 quantile of chi-square with one degree of freedom.
  CHECK(chi2 < 10.828);
}

TEST_CASE("binding bundles") {
  const auto cb = dense(128, 20);
  const auto single = encode_binding_bundle(cb, BindingBundleSpec{20, 2, {{3, 8}}});
  const Codebook raw_cb(CodebookParams{CodebookKind::dense_sign, 128, 20, 0, 5, false});
  const std::vector<Hypervector> pair{raw_cb.atomic(3), raw_cb.atomic(8)};
  const auto bound = vsacap::bind(pair);
  CHECK(std::vector<std::int32_t>(single.raw().begin(), single.raw().end()) ==
        std::vector<std::int32_t>(bound.raw().begin(), bound.raw().end()));
  // Multiplying by S_8 recovers S_3.
  std::vector<std::int32_t> col8(128), col3(128);
  cb.column_into(8, col8);
  cb.column_into(3, col3);
  for (std::size_t i = 0; i < 128; ++i) CHECK(single.raw()[i] * col8[i] == col3[i]);
  CHECK(norm_sq_estimate(single) == 1.0);
  CHECK_THROWS(encode_binding_bundle(cb, BindingBundleSpec{20, 2, {{1, 2}, {1, 2, 3}}}));
  CHECK_THROWS(encode_binding_bundle(cb, BindingBundleSpec{20, 2, {{4, 4}}}));
}

TEST_CASE("sizing") {
  SizingParams p;
  p.N = 16;
  p.M = 100;
  p.delta = 0.01;
  const auto pairs = sizing_mapi("pairs", p);
  CHECK(pairs.m == 1179);
  CHECK(pairs.constants.at("C") == 8.0);

  SizingParams q;
  q.eps = 0.5;
  q.delta = 0.05;
  const auto base = sizing_mapi("norm", q);
  CHECK(base.m == 119);
  q.eps = 0.25;
  CHECK(sizing_mapi("norm", q).m_exact == doctest::Approx(4 * base.m_exact).epsilon(1e-12));
  q.eps = 0.5;
  q.delta = 0.05 / std::exp(1.0);
  CHECK(sizing_mapi("norm", q).m_exact - base.m_exact == doctest::Approx(8.0 * 4.0).epsilon(1e-12));

  SizingParams missing;
  missing.eps = 0.5;
  CHECK_THROWS_WITH(sizing_mapi("norm", missing), "missing parameter: delta");
  missing.delta = 1.0;
  CHECK_THROWS(sizing_mapi("norm", missing));
  missing.delta = 0.1;
  missing.eps = 0.0;
  CHECK_THROWS(sizing_mapi("norm", missing));
  CHECK_THROWS(sizing_mapi("volume", q));

  SizingParams seq;
  seq.eps = 0.5;
  seq.delta = 0.05;
  seq.L = 4;
  seq.K = 2;
  seq.v1 = 8;
  seq.k = 3;
  seq.d = 1000;
  for (auto task : {"sequence", "sequence-symbols", "binding2", "bindingK", "norm-sparse-jl", "norm-srht"}) {
    CAPTURE(task);
    const auto r = sizing_mapi(task, seq);
    CHECK(r.m >= 1);
    auto bigger = seq;
    bigger.eps = 0.25;
    CHECK(sizing_mapi(task, bigger).m >= r.m);
  }
  const auto srht = sizing_mapi("norm-srht", seq);
  CHECK((srht.m & (srht.m - 1)) == 0);
  CHECK(sizing_mapi("norm-sparse-jl", seq).k.has_value());
  seq.C = 2.0;
  CHECK(sizing_mapi("sequence", seq).constants.at("C") == 2.0);
}

}
