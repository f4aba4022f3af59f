#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "vsacap/bloom.hpp"
#include "vsacap/cbloom.hpp"
#include "vsacap/harness.hpp"
#include "vsacap/hopfield.hpp"
#include "vsacap/mapb.hpp"
#include "vsacap/mapi.hpp"
#include "vsacap/rng.hpp"

namespace vsacap {

namespace {

double get(const CellParams& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument(std::string("missing parameter: ") + key);
  return it->second;
}

std::uint64_t get_u(const CellParams& p, const char* key) {
  const double v = get(p, key);
  if (!(v >= 0) || v != std::floor(v) || v > 9e15) {
    throw std::invalid_argument(std::string("parameter ") + key + " must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

void set_default(CellParams& p, const char* key, double value) { p.emplace(key, value); }

SizingParams sizing_from(const CellParams& p, std::initializer_list<const char*> keys) {
  std::map<std::string, double> m;
  for (auto k : keys) {
    auto it = p.find(k);
    if (it != p.end()) m[k] = it->second;
  }
  if (auto it = p.find("C"); it != p.end()) m["C"] = it->second;
  return SizingParams::from_map(m);
}

void set_m(CellParams& p, std::uint64_t sized) {
  if (!p.count("m")) p["m"] = static_cast<double>(sized);
  if (get_u(p, "m") == 0) throw std::invalid_argument("m must be positive");
}

void check_delta(const CellParams& p) {
  const double delta = get(p, "delta");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
}

void check_eps(const CellParams& p) {
  if (!(get(p, "eps") > 0)) throw std::invalid_argument("eps must be positive");
}

// n distinct ids from [d] avoiding `exclude`.
std::vector<std::uint64_t> distinct_ids(rng::Stream& s, std::uint64_t d, std::size_t n,
                                        const std::set<std::uint64_t>& exclude = {}) {
  if (d < exclude.size() || d - exclude.size() < n) throw std::invalid_argument("universe too small for the instance");
  std::set<std::uint64_t> picked;
  std::vector<std::uint64_t> out;
  while (out.size() < n) {
    const auto id = s.below(d);
    if (exclude.count(id) || !picked.insert(id).second) continue;
    out.push_back(id);
  }
  return out;
}

SymbolSet to_set(std::uint64_t d, const std::vector<std::uint64_t>& ids) { return SymbolSet(d, std::span<const std::uint64_t>(ids)); }

std::uint64_t codebook_seed(std::uint64_t seed) { return rng::split(seed, 1); }

Codebook make_codebook(CodebookKind kind, std::uint64_t m, std::uint64_t d, std::uint32_t k, std::uint64_t seed,
                       bool scaled) {
  return Codebook(CodebookParams{kind, m, d, k, codebook_seed(seed), scaled});
}

// Two sets with |X ∩ Y| = n, |X \ Y| = a, |Y \ X| = b.
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> overlapping(rng::Stream& s, std::uint64_t d,
                                                                            std::size_t n, std::size_t a,
                                                                            std::size_t b) {
  const auto ids = distinct_ids(s, d, n + a + b);
  std::vector<std::uint64_t> x(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n + a));
  std::vector<std::uint64_t> y(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n));
  y.insert(y.end(), ids.begin() + static_cast<std::ptrdiff_t>(n + a), ids.end());
  return {x, y};
}

bool rel_fail(double est, double truth, double eps) { return std::abs(est - truth) > eps * truth; }

// ---- setalg ----

void resolve_wedgedot(CellParams& p) {
  set_default(p, "n", 8);
  set_default(p, "d", 64);
  get_u(p, "n");
  if (get_u(p, "d") == 0) throw std::invalid_argument("d must be positive");
}

TrialOutcome trial_wedgedot(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto n = get_u(p, "n");
  rng::Stream s(seed, rng::Tag::instance, 0);
  SymbolSet v(d), w(d);
  std::vector<std::uint64_t> dv(d, 0), dw(d, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto a = s.below(d), b = s.below(d);
    const auto wa = static_cast<std::uint32_t>(1 + s.below(4)), wb = static_cast<std::uint32_t>(1 + s.below(4));
    v.add(a, wa);
    w.add(b, wb);
    dv[a] += wa;
    dw[b] += wb;
  }
  std::uint64_t truth = 0;
  for (std::uint64_t i = 0; i < d; ++i) truth += std::min(dv[i], dw[i]);
  const auto est = wedgedot(v, w);
  return {static_cast<double>(est), static_cast<double>(truth), est != truth};
}

// ---- MAP-I ----

void resolve_mapi_norm(CellParams& p) {
  set_default(p, "n", 1);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  set_default(p, "kind", static_cast<double>(CodebookKind::dense_sign));
  check_eps(p);
  check_delta(p);
  set_default(p, "d", std::max(1000.0, get(p, "n")));
  const auto kind = static_cast<CodebookKind>(get_u(p, "kind"));
  if (kind == CodebookKind::sparse_jl) {
    const auto r = sizing_mapi("norm-sparse-jl", sizing_from(p, {"eps", "delta"}));
    set_m(p, r.m);
    set_default(p, "k", static_cast<double>(std::min<std::uint64_t>(*r.k, get_u(p, "m"))));
  } else if (kind == CodebookKind::srht) {
    set_m(p, std::bit_ceil(sizing_mapi("norm", sizing_from(p, {"eps", "delta"})).m));
  } else if (kind == CodebookKind::dense_sign) {
    set_m(p, sizing_mapi("norm", sizing_from(p, {"eps", "delta"})).m);
  } else {
    throw std::invalid_argument("mapi/norm: kind must be dense-sign, srht or sparse-jl");
  }
  if (get_u(p, "n") > get_u(p, "d")) throw std::invalid_argument("n exceeds d");
}

TrialOutcome trial_mapi_norm(const CellParams& p, std::uint64_t seed) {
  const auto kind = static_cast<CodebookKind>(get_u(p, "kind"));
  const auto k = kind == CodebookKind::sparse_jl ? static_cast<std::uint32_t>(get_u(p, "k")) : 0u;
  const auto cb = make_codebook(kind, get_u(p, "m"), get_u(p, "d"), k, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto v = to_set(cb.d(), distinct_ids(s, cb.d(), get_u(p, "n")));
  const double est = norm_sq_estimate(sketch(cb, v));
  const double truth = static_cast<double>(get_u(p, "n"));
  return {est, truth, rel_fail(est, truth, get(p, "eps"))};
}

void resolve_mapi_pairs(CellParams& p) {
  set_default(p, "n", 8);
  set_default(p, "M", 50);
  set_default(p, "d", 1000);
  set_default(p, "delta", 0.05);
  check_delta(p);
  const double n = static_cast<double>(get_u(p, "n"));
  auto sp = sizing_from(p, {"delta", "M"});
  sp.N = n * n;
  set_m(p, sizing_mapi("pairs", sp).m);
  if (get_u(p, "d") < 2 * get_u(p, "n")) throw std::invalid_argument("d must be at least 2n");
}

TrialOutcome trial_mapi_pairs(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto n = get_u(p, "n");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  std::uint64_t wrong = 0;
  const auto M = get_u(p, "M");
  for (std::uint64_t t = 0; t < M; ++t) {
    const auto c = s.below(n + 1);
    const auto [x, y] = overlapping(s, d, c, n - c, n - c);
    const auto est = intersection_estimate(bundle(cb, to_set(d, x)), bundle(cb, to_set(d, y)));
    wrong += est != c;
  }
  return {static_cast<double>(wrong), 0.0, wrong != 0};
}

void resolve_mapi_sequence(CellParams& p) {
  set_default(p, "L", 4);
  set_default(p, "n", 4);
  set_default(p, "d", 1000);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  check_eps(p);
  check_delta(p);
  set_m(p, sizing_mapi("sequence", sizing_from(p, {"eps", "delta", "L"})).m);
  if (get_u(p, "L") == 0) throw std::invalid_argument("L must be positive");
  if (get_u(p, "n") > get_u(p, "d")) throw std::invalid_argument("n exceeds d");
}

TrialOutcome trial_mapi_sequence(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  SequenceSpec seq;
  for (std::uint64_t l = 0; l < get_u(p, "L"); ++l) seq.sets.push_back(to_set(d, distinct_ids(s, d, get_u(p, "n"))));
  const double est = norm_sq_estimate(encode_sequence(cb, seq));
  const auto flat = seq.flatten();
  const double truth = static_cast<double>(intersection_size(flat, flat));
  return {est, truth, rel_fail(est, truth, get(p, "eps"))};
}

void resolve_mapi_sequence_symbols(CellParams& p) {
  set_default(p, "L", 4);
  set_default(p, "n", 4);
  set_default(p, "K", 2);
  set_default(p, "d", 1000);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  check_eps(p);
  check_delta(p);
  set_m(p, sizing_mapi("sequence-symbols", sizing_from(p, {"eps", "delta", "K"})).m);
  const auto L = get_u(p, "L"), n = get_u(p, "n"), K = get_u(p, "K");
  if (L == 0 || K == 0) throw std::invalid_argument("L and K must be positive");
  if (K > L) throw std::invalid_argument("K cannot exceed L");
  if (n * L > K * get_u(p, "d")) throw std::invalid_argument("d too small for the multiplicity cap");
}

// Symbols repeat across positions, each at most K times in total; the first
// set is reused where possible so the cap is actually reached.
TrialOutcome trial_mapi_sequence_symbols(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto n = get_u(p, "n");
  const auto K = get_u(p, "K");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  std::map<std::uint64_t, std::uint64_t> uses;
  const auto first = distinct_ids(s, d, n);
  SequenceSpec seq;
  for (std::uint64_t l = 0; l < get_u(p, "L"); ++l) {
    SymbolSet set(d);
    for (auto id : first) {
      if (set.support_size() < n && uses[id] < K && (s.next() & 1u)) {
        set.set(id, 1);
        ++uses[id];
      }
    }
    while (set.support_size() < n) {
      const auto id = s.below(d);
      if (set.contains(id) || uses[id] >= K) continue;
      set.set(id, 1);
      ++uses[id];
    }
    seq.sets.push_back(std::move(set));
  }
  const double est = norm_sq_estimate(encode_sequence(cb, seq));
  const double truth = static_cast<double>(n * seq.length());
  return {est, truth, rel_fail(est, truth, get(p, "eps"))};
}

void resolve_mapi_binding(CellParams& p) {
  set_default(p, "n", 8);
  set_default(p, "k", 2);
  set_default(p, "d", 1000);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  check_eps(p);
  check_delta(p);
  auto sp = sizing_from(p, {"eps", "delta", "k"});
  sp.v1 = get(p, "n");
  set_m(p, sizing_mapi(get_u(p, "k") == 2 ? "binding2" : "bindingK", sp).m);
  if (get_u(p, "k") < 2) throw std::invalid_argument("k must be at least 2");
}

TrialOutcome trial_mapi_binding(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto k = static_cast<std::uint32_t>(get_u(p, "k"));
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  BindingBundleSpec spec{d, k, {}};
  std::set<std::vector<std::uint64_t>> seen;
  while (spec.edges.size() < get_u(p, "n")) {
    auto e = distinct_ids(s, d, k);
    std::sort(e.begin(), e.end());
    if (seen.insert(e).second) spec.edges.push_back(e);
  }
  const double est = norm_sq_estimate(encode_binding_bundle(cb, spec));
  const double truth = static_cast<double>(spec.edges.size());
  return {est, truth, rel_fail(est, truth, get(p, "eps"))};
}

// ---- MAP-B ----

void resolve_mapb_member(CellParams& p) {
  set_default(p, "n", 10);
  set_default(p, "d", 256);
  set_default(p, "delta", 0.05);
  check_delta(p);
  set_m(p, sizing_mapb("member", sizing_from(p, {"n", "d", "delta"})).m);
  if (get_u(p, "n") > get_u(p, "d")) throw std::invalid_argument("n exceeds d");
}

TrialOutcome trial_mapb_member(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto x = to_set(d, distinct_ids(s, d, get_u(p, "n")));
  const auto b = bundle_sign(cb, x);
  const double delta = get(p, "delta");
  std::uint64_t wrong = 0;
  for (std::uint64_t j = 0; j < d; ++j) wrong += membership_test(b, j, delta).in != x.contains(j);
  return {static_cast<double>(wrong), 0.0, wrong != 0};
}

void resolve_mapb_empty(CellParams& p) {
  set_default(p, "n", 4);
  set_default(p, "overlap", 0);
  set_default(p, "d", 1000);
  set_default(p, "delta", 0.05);
  check_delta(p);
  auto sp = sizing_from(p, {"delta"});
  sp.size_x = get(p, "n");
  sp.size_y = get(p, "n");
  set_m(p, sizing_mapb("empty-intersection", sp).m);
  if (get_u(p, "overlap") > get_u(p, "n")) throw std::invalid_argument("overlap exceeds n");
}

TrialOutcome trial_mapb_empty(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto n = get_u(p, "n");
  const auto c = get_u(p, "overlap");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto [x, y] = overlapping(s, d, c, n - c, n - c);
  const auto r = empty_intersection_test(bundle_sign(cb, to_set(d, x)), bundle_sign(cb, to_set(d, y)), get(p, "delta"));
  const double truth = c > 0 ? 1.0 : 0.0;
  const double est = r.nonempty ? 1.0 : 0.0;
  return {est, truth, est != truth};
}

void resolve_mapb_depth(CellParams& p) {
  set_default(p, "r", 2);
  set_default(p, "m", 4096);
  if (get_u(p, "r") == 0 || get_u(p, "m") == 0) throw std::invalid_argument("r and m must be positive");
}

TrialOutcome trial_mapb_depth(const CellParams& p, std::uint64_t seed) {
  const auto r = get_u(p, "r");
  const auto m = get_u(p, "m");
  const auto cb = make_codebook(CodebookKind::dense_sign, m, r, 0, seed, false);
  std::vector<Hypervector> xs;
  for (std::uint64_t j = 0; j < r; ++j) xs.push_back(cb.atomic(j));
  const auto b = iterated_bundle(xs, rng::split(seed, 2));
  const auto bx = b.vector().raw();
  const auto x0 = xs.front().raw();
  std::int64_t agree = 0;
  for (std::size_t i = 0; i < bx.size(); ++i) agree += bx[i] * x0[i];
  const double est = (static_cast<double>(agree) / static_cast<double>(m) + 1.0) / 2.0;
  const double truth = 0.5 + std::ldexp(1.0, -static_cast<int>(r));
  const double sigma = std::sqrt(truth * (1 - truth) / static_cast<double>(m));
  return {est, truth, std::abs(est - truth) > 3 * sigma};
}

void resolve_mapb_sequence(CellParams& p) {
  set_default(p, "n", 3);
  set_default(p, "L", 4);
  set_default(p, "d", 64);
  set_default(p, "delta", 0.05);
  check_delta(p);
  auto sp = sizing_from(p, {"delta", "L", "d"});
  sp.n = get(p, "n") * get(p, "L");
  set_m(p, sizing_mapb("sequence-member", sp).m);
  if (get_u(p, "L") == 0) throw std::invalid_argument("L must be positive");
  if (get_u(p, "n") > get_u(p, "d")) throw std::invalid_argument("n exceeds d");
}

TrialOutcome trial_mapb_sequence(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto L = get_u(p, "L");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  SequenceSpec seq;
  for (std::uint64_t l = 0; l < L; ++l) seq.sets.push_back(to_set(d, distinct_ids(s, d, get_u(p, "n"))));
  const auto b = bundle_sequence_sign(cb, seq);
  const double delta = get(p, "delta");
  std::uint64_t wrong = 0;
  for (std::uint64_t j = 0; j < L * d; ++j) {
    wrong += sequence_membership_test(b, j, delta).in != seq.sets[j / d].contains(j % d);
  }
  return {static_cast<double>(wrong), 0.0, wrong != 0};
}

void resolve_mapb_kv(CellParams& p) {
  set_default(p, "n", 8);
  set_default(p, "d", 256);
  set_default(p, "delta", 0.05);
  check_delta(p);
  set_m(p, sizing_mapb("kv-member", sizing_from(p, {"n", "d", "delta"})).m);
  if (get_u(p, "d") < 2 * get_u(p, "n") + 2) throw std::invalid_argument("d too small for n key-value pairs");
}

TrialOutcome trial_mapb_kv(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto n = get_u(p, "n");
  const auto half = d / 2;
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto keys = distinct_ids(s, half, n);
  const auto vals = distinct_ids(s, d - half, n);
  KeyValueSpec spec{d, {}};
  for (std::uint64_t i = 0; i < n; ++i) spec.pairs.emplace_back(keys[i], half + vals[i]);
  const auto b = bundle_kv_sign(cb, spec);
  const double delta = get(p, "delta");
  std::uint64_t wrong = 0;
  for (const auto& [q, w] : spec.pairs) wrong += !kv_membership_test(b, q, w, delta).in;
  for (std::uint64_t i = 0; i < n; ++i) {
    // A stored key with some other value.
    const auto& [q, w] = spec.pairs[s.below(n)];
    std::uint64_t other = w;
    while (other == w) other = half + s.below(d - half);
    wrong += kv_membership_test(b, q, other, delta).in;
  }
  return {static_cast<double>(wrong), 0.0, wrong != 0};
}

// ---- Bloom ----

void resolve_bloom_intersection(CellParams& p) {
  set_default(p, "n", 5);
  set_default(p, "n_v", 10);
  set_default(p, "n_w", 10);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  set_default(p, "d", 1000000);
  check_eps(p);
  check_delta(p);
  const auto r = sizing_bloom(sizing_from(p, {"eps", "delta", "n", "n_v", "n_w"}));
  set_m(p, r.m);
  set_default(p, "k", static_cast<double>(*r.k));
  if (get_u(p, "m") < 2 || get_u(p, "k") == 0) throw std::invalid_argument("Bloom needs m >= 2 and k >= 1");
}

TrialOutcome trial_bloom_intersection(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto cb = make_codebook(CodebookKind::sparse_binary_trials, get_u(p, "m"), d,
                                static_cast<std::uint32_t>(get_u(p, "k")), seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto n = get_u(p, "n");
  const auto [x, y] = overlapping(s, d, n, get_u(p, "n_v"), get_u(p, "n_w"));
  const auto est = intersection_estimate(bundle_bloom(cb, to_set(d, x)), bundle_bloom(cb, to_set(d, y)));
  const double truth = static_cast<double>(n);
  if (est.saturated) return {static_cast<double>(cb.m()), truth, true};
  return {est.value, truth, std::round(est.value) != truth};
}

void resolve_bloom_size(CellParams& p) {
  set_default(p, "n", 64);
  set_default(p, "m", 4096);
  set_default(p, "k", 8);
  set_default(p, "eps", 0.1);
  set_default(p, "d", 1000000);
  check_eps(p);
  if (get_u(p, "m") < 2 || get_u(p, "k") == 0) throw std::invalid_argument("Bloom needs m >= 2 and k >= 1");
}

TrialOutcome trial_bloom_size(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto cb = make_codebook(CodebookKind::sparse_binary_trials, get_u(p, "m"), d,
                                static_cast<std::uint32_t>(get_u(p, "k")), seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto n = get_u(p, "n");
  const auto est = size_estimate(bundle_bloom(cb, to_set(d, distinct_ids(s, d, n))));
  const double truth = static_cast<double>(n);
  if (est.saturated) return {static_cast<double>(cb.m()), truth, true};
  return {est.value, truth, std::abs(est.value - truth) > get(p, "eps") * std::max(truth, 1.0)};
}

// ---- Counting Bloom ----

void resolve_cbloom(CellParams& p) {
  set_default(p, "n", 5);
  set_default(p, "n_v", 10);
  set_default(p, "n_w", 10);
  set_default(p, "K_b", 1);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  set_default(p, "d", 1000000);
  check_eps(p);
  check_delta(p);
  if (get_u(p, "K_b") == 0) throw std::invalid_argument("K_b must be a positive integer");
  const auto r = sizing_cbloom(sizing_from(p, {"eps", "delta", "K_b", "n_v", "n_w"}));
  set_m(p, r.m);
  set_default(p, "k", static_cast<double>(*r.k));
  if (get_u(p, "k") == 0 || get_u(p, "k") > get_u(p, "m")) throw std::invalid_argument("Counting Bloom needs 1 <= k <= m");
}

struct CountInstance {
  SymbolSet v, w;
  CountBundle bv, bw;
};

CountInstance count_instance(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto cb = make_codebook(CodebookKind::sparse_binary_exact, get_u(p, "m"), d,
                                static_cast<std::uint32_t>(get_u(p, "k")), seed, false);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto [x, y] = overlapping(s, d, get_u(p, "n"), get_u(p, "n_v"), get_u(p, "n_w"));
  const auto Kb = get_u(p, "K_b");
  SymbolSet v(d), w(d);
  for (auto id : x) v.set(id, static_cast<std::uint32_t>(1 + s.below(Kb)));
  for (auto id : y) w.set(id, static_cast<std::uint32_t>(1 + s.below(Kb)));
  auto bv = bundle_count(cb, v);
  auto bw = bundle_count(cb, w);
  return {std::move(v), std::move(w), std::move(bv), std::move(bw)};
}

TrialOutcome trial_cbloom_intersection(const CellParams& p, std::uint64_t seed) {
  const auto inst = count_instance(p, seed);
  const double est = generalized_intersection_estimate(inst.bv, inst.bw);
  const double truth = static_cast<double>(wedgedot(inst.v, inst.w));
  return {est, truth, est < truth || est - truth >= get(p, "eps")};
}

TrialOutcome trial_cbloom_l1(const CellParams& p, std::uint64_t seed) {
  const auto inst = count_instance(p, seed);
  const double est = l1_distance_estimate(inst.bv, inst.bw, inst.v.l1_norm(), inst.w.l1_norm());
  const double truth = static_cast<double>(l1_distance(inst.v, inst.w));
  return {est, truth, est > truth || truth - est >= 2 * get(p, "eps")};
}

// ---- Hopfield ----

void resolve_hopfield(CellParams& p) {
  set_default(p, "n", 16);
  set_default(p, "delta", 0.05);
  set_default(p, "erase", 0.5);
  check_delta(p);
  if (get_u(p, "n") == 0) throw std::invalid_argument("n must be positive");
  set_m(p, sizing_hopfield(get(p, "n"), get(p, "delta")).m);
  const double e = get(p, "erase");
  if (!(e >= 0 && e <= 1)) throw std::invalid_argument("erase must lie in [0, 1]");
}

void resolve_hopfield_kv(CellParams& p) {
  resolve_hopfield(p);
  auto m = get_u(p, "m");
  if (m % 2) p["m"] = static_cast<double>(m + 1);
}

void resolve_hopfield_thin(CellParams& p) {
  set_default(p, "n", 4);
  set_default(p, "delta", 0.05);
  check_delta(p);
  if (get_u(p, "n") == 0) throw std::invalid_argument("n must be positive");
  set_m(p, 4 * sizing_hopfield(get(p, "n"), get(p, "delta")).m);
  const double m = get(p, "m");
  set_default(p, "keep", std::min(m, std::ceil(4 * get(p, "n") * std::log(2 * m / get(p, "delta")))));
  if (get_u(p, "keep") == 0 || get_u(p, "keep") > get_u(p, "m")) throw std::invalid_argument("keep must lie in [1, m]");
}

std::vector<Hypervector> patterns(const CellParams& p, std::uint64_t seed) {
  const auto n = get_u(p, "n");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), n, 0, seed, false);
  std::vector<Hypervector> out;
  out.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) out.push_back(cb.atomic(j));
  return out;
}

std::int64_t hamming(const Hypervector& a, const Hypervector& b) {
  std::int64_t h = 0;
  for (std::size_t i = 0; i < a.size(); ++i) h += a.raw()[i] != b.raw()[i];
  return h;
}

TrialOutcome trial_hopfield_store(const CellParams& p, std::uint64_t seed) {
  const auto ps = patterns(p, seed);
  const auto net = train(ps);
  std::uint64_t unstable = 0;
  for (const auto& x : ps) unstable += !(recall_step(net, x) == x);
  return {static_cast<double>(unstable), 0.0, unstable != 0};
}

TrialOutcome trial_hopfield_recall(const CellParams& p, std::uint64_t seed) {
  const auto ps = patterns(p, seed);
  const auto net = train(ps);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto& x = ps[s.below(ps.size())];
  const auto erasures = static_cast<std::uint64_t>(std::floor(get(p, "erase") * static_cast<double>(x.size())));
  const auto out = recall_step(net, corrupt(x, erasures, 0, rng::split(seed, 2)));
  const auto h = hamming(out, x);
  return {static_cast<double>(h), 0.0, h != 0};
}

TrialOutcome trial_hopfield_kv(const CellParams& p, std::uint64_t seed) {
  const auto ps = patterns(p, seed);
  const auto net = train(ps);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto& x = ps[s.below(ps.size())];
  // Probe with the key half [x; 0] or the value half [0; y].
  const std::size_t half = x.size() / 2;
  const bool key_half = s.next() & 1u;
  std::vector<std::int32_t> probe(x.raw().begin(), x.raw().end());
  std::fill(probe.begin() + static_cast<std::ptrdiff_t>(key_half ? half : 0),
            probe.begin() + static_cast<std::ptrdiff_t>(key_half ? x.size() : half), 0);
  const auto out = recall_step(net, Hypervector(Domain::integer, std::move(probe)));
  const auto h = hamming(out, x);
  return {static_cast<double>(h), 0.0, h != 0};
}

TrialOutcome trial_hopfield_thin(const CellParams& p, std::uint64_t seed) {
  const auto ps = patterns(p, seed);
  const auto net = train(ps);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto keep = distinct_ids(s, net.m(), get_u(p, "keep"));
  const auto thinned = thin(net, keep);
  const auto& x = ps[s.below(ps.size())];
  const auto h = hamming(recall_step(thinned, x), x);
  return {static_cast<double>(h), 0.0, h != 0};
}

void resolve_hpm(CellParams& p) {
  set_default(p, "n", 8);
  set_default(p, "d", 512);
  set_default(p, "eps", 0.5);
  set_default(p, "delta", 0.05);
  check_eps(p);
  check_delta(p);
  set_m(p, sizing_hopfield_task("hpm-norm", sizing_from(p, {"eps", "delta", "d"})).m);
  if (2 * get_u(p, "n") > get_u(p, "d")) throw std::invalid_argument("d must be at least 2n");
}

TrialOutcome trial_hpm_product(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto n = get_u(p, "n");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto c = s.below(n + 1);
  const auto [x, y] = overlapping(s, d, c, n - c, n - c);
  const auto dseed = rng::split(seed, 3);
  const double est = hpm_dot_estimate(hpm_encode(cb, to_set(d, x), dseed), hpm_encode(cb, to_set(d, y), dseed));
  const double truth = static_cast<double>(c);
  return {est, truth, std::abs(est - truth) > get(p, "eps") * static_cast<double>(n)};
}

TrialOutcome trial_hpm_norm(const CellParams& p, std::uint64_t seed) {
  const auto d = get_u(p, "d");
  const auto cb = make_codebook(CodebookKind::dense_sign, get_u(p, "m"), d, 0, seed, true);
  rng::Stream s(seed, rng::Tag::instance, 0);
  const auto x = to_set(d, distinct_ids(s, d, get_u(p, "n")));
  const double est = hpm_norm_estimate(hpm_encode(cb, x, rng::split(seed, 3)));
  const double truth = static_cast<double>(get_u(p, "n"));
  return {est, truth, rel_fail(est, truth, get(p, "eps"))};
}

struct TaskDef {
  TaskInfo info;
  void (*resolve)(CellParams&);
  TrialOutcome (*trial)(const CellParams&, std::uint64_t);
};

const std::vector<TaskDef>& task_table() {
  static const std::vector<TaskDef> table = {
      {{"setalg", "wedgedot", "exact wedgedot against a dense recount"}, resolve_wedgedot, trial_wedgedot},
      {{"mapi", "norm", "||S̄v||^2 within (1 +- eps) ||v||^2; kind selects dense-sign, srht or sparse-jl"},
       resolve_mapi_norm, trial_mapi_norm},
      {{"mapi", "pairs", "all M rounded intersections exact"}, resolve_mapi_pairs, trial_mapi_pairs},
      {{"mapi", "sequence", "rotation-encoded sequence norm within (1 +- eps)"}, resolve_mapi_sequence,
       trial_mapi_sequence},
      {{"mapi", "sequence-symbols", "sequence norm within (1 +- eps) with each symbol used at most K times"},
       resolve_mapi_sequence_symbols, trial_mapi_sequence_symbols},
      {{"mapi", "binding", "k-binding bundle norm within (1 +- eps) |E|"}, resolve_mapi_binding, trial_mapi_binding},
      {{"mapb", "member", "every symbol of [d] classified correctly"}, resolve_mapb_member, trial_mapb_member},
      {{"mapb", "empty-intersection", "empty/nonempty decision correct"}, resolve_mapb_empty, trial_mapb_empty},
      {{"mapb", "depth", "agreement after r chained bundles within 3 sigma of 1/2 + 2^-r"}, resolve_mapb_depth,
       trial_mapb_depth},
      {{"mapb", "sequence-member", "every (position, symbol) classified correctly"}, resolve_mapb_sequence,
       trial_mapb_sequence},
      {{"mapb", "kv-member", "stored pairs in, n absent pairs out"}, resolve_mapb_kv, trial_mapb_kv},
      {{"bloom", "intersection", "rounded h_mk(x.y) equals |X ∩ Y|"}, resolve_bloom_intersection,
       trial_bloom_intersection},
      {{"bloom", "size", "h_mk(popcount) within eps |X|"}, resolve_bloom_size, trial_bloom_size},
      {{"cbloom", "intersection", "0 <= (1/k) x⊼y - v⊼w < eps"}, resolve_cbloom, trial_cbloom_intersection},
      {{"cbloom", "l1", "0 <= ||v-w||_1 - estimate < 2 eps"}, resolve_cbloom, trial_cbloom_l1},
      {{"hopfield", "store", "every stored pattern is a one-step fixed point"}, resolve_hopfield,
       trial_hopfield_store},
      {{"hopfield", "recall", "one step recovers a pattern from an erased probe"}, resolve_hopfield,
       trial_hopfield_recall},
      {{"hopfield", "kv", "one step recovers [x; y] from [x; 0] or [0; y]"}, resolve_hopfield_kv, trial_hopfield_kv},
      {{"hopfield", "thin", "column-thinned net recovers a stored pattern"}, resolve_hopfield_thin,
       trial_hopfield_thin},
      {{"hopfield", "hpm", "tr(M1 M2) within eps ||X||_F ||Y||_F of tr(XY)"}, resolve_hpm, trial_hpm_product},
      {{"hopfield", "hpm-norm", "||M||_F^2 within (1 +- eps) ||V||_F^2"}, resolve_hpm, trial_hpm_norm},
  };
  return table;
}

const TaskDef& find_task(std::string_view arch, std::string_view task) {
  for (const auto& t : task_table()) {
    if (t.info.arch == arch && t.info.task == task) return t;
  }
  throw std::invalid_argument("unknown experiment task " + std::string(arch) + "/" + std::string(task));
}

}  // namespace

const std::vector<TaskInfo>& registered_tasks() {
  static const std::vector<TaskInfo> infos = [] {
    std::vector<TaskInfo> out;
    for (const auto& t : task_table()) out.push_back(t.info);
    return out;
  }();
  return infos;
}

bool is_registered(std::string_view arch, std::string_view task) {
  for (const auto& t : task_table()) {
    if (t.info.arch == arch && t.info.task == task) return true;
  }
  return false;
}

CellParams resolve_cell(std::string_view arch, std::string_view task, CellParams params) {
  find_task(arch, task).resolve(params);
  return params;
}

TrialOutcome run_trial(std::string_view arch, std::string_view task, const CellParams& params, std::uint64_t seed) {
  return find_task(arch, task).trial(params, seed);
}

}  // namespace vsacap
