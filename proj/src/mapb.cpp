#include "vsacap/mapb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vsacap/rng.hpp"

namespace vsacap {

namespace {

void require_dense(const Codebook& cb, const char* what) {
  if (!cb.is_sign_kind() || cb.kind() == CodebookKind::srht) {
    throw std::invalid_argument(std::string(what) + ": needs a dense-sign codebook");
  }
}

const Codebook& require_codebook(const MapBBundle& b) {
  if (!b.codebook()) throw std::invalid_argument("MAP-B: bundle has no codebook to query against");
  return *b.codebook();
}

std::vector<std::int32_t> threshold_signs(std::span<const std::int32_t> sums, std::uint64_t tie_seed,
                                          std::uint64_t step) {
  // Same coins as tie_sign(), with one stream for the whole vector.
  const rng::Stream coins(tie_seed, rng::Tag::tie_break, step);
  std::vector<std::int32_t> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] != 0) {
      out[i] = sums[i] > 0 ? 1 : -1;
    } else {
      out[i] = ((coins.at(i >> 6) >> (i & 63)) & 1u) ? 1 : -1;
    }
  }
  return out;
}

std::int64_t score_against(const MapBBundle& b, std::span<const std::int32_t> column) {
  return raw_dot(b.vector().raw(), column);
}

}  // namespace

MapBBundle::MapBBundle(Hypervector vector, std::optional<Codebook> cb, std::uint64_t tie_seed, std::uint32_t depth)
    : x_(std::move(vector)), cb_(std::move(cb)), tie_seed_(tie_seed), depth_(depth) {
  if (x_.domain() != Domain::sign) throw std::invalid_argument("MAP-B bundles hold sign vectors");
  if (cb_ && cb_->m() != x_.size()) throw std::invalid_argument("MAP-B: vector length differs from codebook m");
  if (depth_ == 0) throw std::invalid_argument("MAP-B: depth must be at least 1");
}

void KeyValueSpec::validate() const {
  if (d == 0) throw std::invalid_argument("key-value pairs: empty universe");
  std::set<std::uint64_t> ks, vs;
  for (const auto& [q, w] : pairs) {
    if (q >= d || w >= d) throw std::out_of_range("key-value pairs: id out of range");
    if (!ks.insert(q).second) throw std::invalid_argument("key-value pairs: key " + std::to_string(q) + " repeated");
    vs.insert(w);
  }
  for (auto q : ks) {
    if (vs.count(q)) throw std::invalid_argument("key-value pairs: id " + std::to_string(q) + " is a key and a value");
  }
}

std::set<std::uint64_t> KeyValueSpec::keys() const {
  std::set<std::uint64_t> s;
  for (const auto& pr : pairs) s.insert(pr.first);
  return s;
}

std::set<std::uint64_t> KeyValueSpec::values() const {
  std::set<std::uint64_t> s;
  for (const auto& pr : pairs) s.insert(pr.second);
  return s;
}

std::uint64_t default_tie_seed(const Codebook& cb, const SymbolSet& v) {
  return rng::split(cb.seed(), static_cast<std::uint64_t>(rng::Tag::tie_break), rng::fnv1a(v.to_json().dump()));
}

MapBBundle bundle_sign(const Codebook& cb, const SymbolSet& v, std::optional<std::uint64_t> tie_seed) {
  require_dense(cb, "bundle_sign");
  v.require_binary("bundle_sign");
  if (v.universe() != cb.d()) throw std::invalid_argument("bundle_sign: symbol universe differs from codebook d");
  std::vector<std::int32_t> sums(cb.m(), 0);
  for (const auto& [id, w] : v.entries()) cb.accumulate(id, 1, sums);
  const std::uint64_t seed = tie_seed ? *tie_seed : default_tie_seed(cb, v);
  return MapBBundle(Hypervector(Domain::sign, threshold_signs(sums, seed, 0)), cb, seed, 1);
}

double membership_threshold(std::uint64_t m, std::uint64_t d, double delta) {
  return std::sqrt(2.0 * static_cast<double>(m) * std::log(2.0 * static_cast<double>(d) / delta));
}

double empty_intersection_threshold(std::uint64_t m, double delta) {
  return std::sqrt(2.0 * static_cast<double>(m) * std::log(2.0 / delta));
}

double sequence_threshold(std::uint64_t m, std::uint64_t L, std::uint64_t d, double delta) {
  return 2.0 * std::sqrt(static_cast<double>(m) * std::log(static_cast<double>(L) * static_cast<double>(d) / delta));
}

double kv_threshold(std::uint64_t m, std::uint64_t d, double delta) {
  return 2.0 * std::sqrt(static_cast<double>(m) * std::log(static_cast<double>(d) / delta));
}

MembershipResult membership_test(const MapBBundle& b, std::uint64_t j, double delta) {
  const auto& cb = require_codebook(b);
  std::vector<std::int32_t> col(cb.m());
  cb.column_into(j, col);
  MembershipResult r;
  r.score = score_against(b, col);
  r.threshold = membership_threshold(cb.m(), cb.d(), delta);
  r.in = static_cast<double>(r.score) >= r.threshold;
  r.depth_warning = b.depth() > 1;
  return r;
}

EmptinessResult empty_intersection_test(const MapBBundle& a, const MapBBundle& b, double delta) {
  if (a.size() != b.size()) throw std::invalid_argument("empty_intersection_test: length mismatch");
  if (a.codebook() && b.codebook() && !(*a.codebook() == *b.codebook())) {
    throw std::invalid_argument("empty_intersection_test: bundles use different codebooks");
  }
  EmptinessResult r;
  r.score = raw_dot(a.vector().raw(), b.vector().raw());
  r.threshold = empty_intersection_threshold(a.size(), delta);
  r.nonempty = static_cast<double>(r.score) >= r.threshold;
  return r;
}

MapBBundle iterated_bundle(std::span<const Hypervector> vectors, std::uint64_t tie_seed) {
  if (vectors.empty()) throw std::invalid_argument("iterated_bundle: no vectors");
  const std::size_t m = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.domain() != Domain::sign) throw std::invalid_argument("iterated_bundle: inputs must be sign vectors");
    if (v.size() != m) throw std::invalid_argument("iterated_bundle: mixed lengths");
  }
  std::vector<std::int32_t> x(vectors.front().raw().begin(), vectors.front().raw().end());
  std::vector<std::int32_t> sum(m);
  for (std::size_t j = 1; j < vectors.size(); ++j) {
    const auto y = vectors[j].raw();
    for (std::size_t i = 0; i < m; ++i) sum[i] = x[i] + y[i];
    x = threshold_signs(sum, tie_seed, j);
  }
  return MapBBundle(Hypervector(Domain::sign, std::move(x)), std::nullopt, tie_seed,
                    static_cast<std::uint32_t>(vectors.size()));
}

MapBSequenceBundle bundle_sequence_sign(const Codebook& cb, const SequenceSpec& seq,
                                        std::optional<std::uint64_t> tie_seed) {
  require_dense(cb, "bundle_sequence_sign");
  seq.validate();
  if (seq.universe() != cb.d()) throw std::invalid_argument("bundle_sequence_sign: universe differs from codebook d");
  const std::uint64_t m = cb.m();
  std::vector<std::int32_t> sums(m, 0), part(m);
  for (std::size_t l = 0; l < seq.length(); ++l) {
    seq.sets[l].require_binary("bundle_sequence_sign");
    std::fill(part.begin(), part.end(), 0);
    for (const auto& [id, w] : seq.sets[l].entries()) cb.accumulate(id, 1, part);
    const std::uint64_t s = l % m;
    for (std::uint64_t i = 0; i < m; ++i) sums[i] += part[i + s < m ? i + s : i + s - m];
  }
  const std::uint64_t seed = tie_seed ? *tie_seed : default_tie_seed(cb, seq.flatten());
  return {MapBBundle(Hypervector(Domain::sign, threshold_signs(sums, seed, 0)), cb, seed, 1), seq.length()};
}

MembershipResult sequence_membership_test(const MapBSequenceBundle& b, std::uint64_t j, double delta) {
  const auto& cb = require_codebook(b.bundle);
  const std::uint64_t d = cb.d();
  if (j >= b.length * d) throw std::out_of_range("sequence_membership_test: index beyond L*d");
  std::vector<std::int32_t> col(cb.m()), rotated(cb.m());
  cb.column_into(j % d, col);
  rotate_into(col, j / d, rotated);
  MembershipResult r;
  r.score = score_against(b.bundle, rotated);
  r.threshold = sequence_threshold(cb.m(), b.length, d, delta);
  r.in = static_cast<double>(r.score) >= r.threshold;
  r.depth_warning = b.bundle.depth() > 1;
  return r;
}

MapBKvBundle bundle_kv_sign(const Codebook& cb, const KeyValueSpec& spec, std::optional<std::uint64_t> tie_seed) {
  require_dense(cb, "bundle_kv_sign");
  spec.validate();
  if (spec.d != cb.d()) throw std::invalid_argument("bundle_kv_sign: universe differs from codebook d");
  const std::uint64_t m = cb.m();
  std::vector<std::int32_t> sums(m, 0), cq(m), cw(m);
  std::uint64_t h = rng::fnv1a("kv");
  for (const auto& [q, w] : spec.pairs) {
    cb.column_into(q, cq);
    cb.column_into(w, cw);
    for (std::uint64_t i = 0; i < m; ++i) sums[i] += cq[i] * cw[i];
    h = rng::split(h, q, w);
  }
  const std::uint64_t seed =
      tie_seed ? *tie_seed : rng::split(cb.seed(), static_cast<std::uint64_t>(rng::Tag::tie_break), h);
  return {MapBBundle(Hypervector(Domain::sign, threshold_signs(sums, seed, 0)), cb, seed, 1), spec.keys(),
          spec.values()};
}

MembershipResult kv_membership_test(const MapBKvBundle& b, std::uint64_t q, std::uint64_t w, double delta) {
  if (b.values.count(q)) throw std::invalid_argument("kv_membership_test: query key is a stored value");
  if (b.keys.count(w)) throw std::invalid_argument("kv_membership_test: query value is a stored key");
  const auto& cb = require_codebook(b.bundle);
  std::vector<std::int32_t> cq(cb.m()), cw(cb.m());
  cb.column_into(q, cq);
  cb.column_into(w, cw);
  for (std::size_t i = 0; i < cq.size(); ++i) cq[i] *= cw[i];
  MembershipResult r;
  r.score = score_against(b.bundle, cq);
  r.threshold = kv_threshold(cb.m(), cb.d(), delta);
  r.in = static_cast<double>(r.score) >= r.threshold;
  r.depth_warning = b.bundle.depth() > 1;
  return r;
}

SizingResult sizing_mapb(std::string_view task, const SizingParams& p) {
  const std::string key = "mapb." + std::string(task);
  const double delta = p.require_delta();
  if (p.eps && *p.eps <= 0) throw std::invalid_argument("eps must be positive");
  if (task == "member" || task == "kv-member") {
    const double n = p.require("n"), d = p.require("d");
    const double C = detail::leading_constant(p, key);
    return detail::finish(key + ": C*n*ln(d/delta)", C * n * std::log(d / delta), p, {{"C", C}});
  }
  if (task == "sequence-member") {
    const double n = p.require("n"), d = p.require("d"), L = p.require("L");
    const double C = detail::leading_constant(p, key);
    return detail::finish(key + ": C*n*L*ln(L*d/delta)", C * n * L * std::log(L * d / delta), p, {{"C", C}});
  }
  if (task == "empty-intersection") {
    const double x = p.require("size_x"), y = p.require("size_y");
    const double C = detail::leading_constant(p, key);
    return detail::finish(key + ": C*ln(2/delta)*size_x*size_y", C * std::log(2.0 / delta) * x * y, p, {{"C", C}});
  }
  throw std::invalid_argument("unknown MAP-B sizing task: " + std::string(task));
}

}  // namespace vsacap
