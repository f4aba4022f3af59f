#include "vsacap/bloom.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vsacap {

namespace {

void require_trials(const Codebook& cb) {
  if (cb.kind() != CodebookKind::sparse_binary_trials) {
    throw std::invalid_argument("Bloom bundles need a sparse-binary-trials codebook, got " +
                                std::string(to_string(cb.kind())));
  }
}

}  // namespace

BloomBundle::BloomBundle(Codebook cb) : cb_(std::move(cb)), words_((cb_.m() + 63) / 64, 0) { require_trials(cb_); }

BloomBundle::BloomBundle(Codebook cb, std::vector<std::uint64_t> words) : cb_(std::move(cb)), words_(std::move(words)) {
  require_trials(cb_);
  if (words_.size() != (cb_.m() + 63) / 64) throw std::invalid_argument("Bloom bundle: word count differs from m");
  if (cb_.m() % 64 != 0 && (words_.back() >> (cb_.m() % 64)) != 0) {
    throw std::invalid_argument("Bloom bundle: bits set beyond m");
  }
}

std::uint64_t BloomBundle::popcount() const noexcept {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

void BloomBundle::insert(std::uint64_t j) {
  std::vector<std::uint32_t> pos;
  cb_.trial_positions(j, pos);
  for (auto p : pos) set_bit(p);
}

Hypervector BloomBundle::vector() const {
  std::vector<std::int32_t> out(m());
  for (std::uint64_t i = 0; i < m(); ++i) out[i] = bit(i) ? 1 : 0;
  return Hypervector(Domain::binary, std::move(out));
}

BloomBundle bundle_bloom(const Codebook& cb, const SymbolSet& v) {
  v.require_binary("bundle_bloom");
  if (v.universe() != cb.d()) throw std::invalid_argument("bundle_bloom: symbol universe differs from codebook d");
  BloomBundle b(cb);
  for (const auto& [id, w] : v.entries()) b.insert(id);
  return b;
}

std::uint64_t and_popcount(const BloomBundle& a, const BloomBundle& b) {
  if (!(a.codebook() == b.codebook())) throw std::invalid_argument("Bloom: bundles use different codebooks");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    c += static_cast<std::uint64_t>(std::popcount(a.words()[i] & b.words()[i]));
  }
  return c;
}

double mtilde(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("mtilde: m must be at least 2");
  return -1.0 / std::log1p(-1.0 / static_cast<double>(m));
}

BloomEstimate h_mk(std::uint64_t m, std::uint32_t k, double z) {
  if (m < 2) throw std::invalid_argument("h_mk: m must be at least 2");
  if (k < 1) throw std::invalid_argument("h_mk: k must be at least 1");
  const double md = static_cast<double>(m);
  if (!(z >= 0) || z > md) throw std::invalid_argument("h_mk: z outside [0, m]");
  if (z == md) return {std::numeric_limits<double>::infinity(), true};
  return {-(mtilde(m) / k) * std::log1p(-z / md), false};
}

BloomEstimate size_estimate(const BloomBundle& b) {
  return h_mk(b.m(), b.k(), static_cast<double>(b.popcount()));
}

BloomEstimate intersection_estimate(const BloomBundle& a, const BloomBundle& b) {
  return h_mk(a.m(), a.k(), static_cast<double>(and_popcount(a, b)));
}

SizingResult sizing_bloom(double eps, double delta, double n, double n_v, double n_w) {
  SizingParams p;
  p.eps = eps;
  p.delta = delta;
  p.n = n;
  p.n_v = n_v;
  p.n_w = n_w;
  return sizing_bloom(p);
}

SizingResult sizing_bloom(const SizingParams& p) {
  const double eps = p.require_eps();
  const double delta = p.require_delta();
  const double n = p.require("n");
  double n_v = p.require("n_v");
  double n_w = p.require("n_w");
  if (n_w < n_v) std::swap(n_v, n_w);
  const double c1 = p.C ? detail::leading_constant(p, "bloom.c1") : default_constant("bloom.c1");
  const double k_exact = 2.0 * c1 * std::log(2.0 / delta) / eps;
  const std::uint64_t k = std::max<std::uint64_t>(1, tolerant_ceil(k_exact));
  const double kd = static_cast<double>(k);
  const double m_exact = (kd / eps) * (n_v * n_w / 2.0 + 8.0 * c1 * n * n + eps * (n + n_w));
  auto r = detail::finish("bloom: k=ceil(2*c1*ln(2/delta)/eps), m=ceil((k/eps)*(n_v*n_w/2+8*c1*n^2+eps*(n+n_w)))",
                          m_exact, p, {{"c1", c1}}, 2);
  r.k = k;
  r.k_exact = k_exact;
  return r;
}

}  // namespace vsacap
