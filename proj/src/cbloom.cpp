#include "vsacap/cbloom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vsacap {

namespace {

void require_exact(const Codebook& cb) {
  if (cb.kind() != CodebookKind::sparse_binary_exact) {
    throw std::invalid_argument("Counting-Bloom bundles need a sparse-binary-exact codebook, got " +
                                std::string(to_string(cb.kind())));
  }
}

void require_same(const CountBundle& a, const CountBundle& b) {
  if (!(a.codebook() == b.codebook())) throw std::invalid_argument("Counting Bloom: bundles use different codebooks");
}

}  // namespace

CountBundle::CountBundle(Codebook cb) : cb_(std::move(cb)), counts_(cb_.m(), 0) { require_exact(cb_); }

CountBundle::CountBundle(Codebook cb, std::vector<std::int32_t> counts) : cb_(std::move(cb)), counts_(std::move(counts)) {
  require_exact(cb_);
  if (counts_.size() != cb_.m()) throw std::invalid_argument("Counting Bloom: count length differs from m");
  if (std::any_of(counts_.begin(), counts_.end(), [](std::int32_t c) { return c < 0; })) {
    throw std::invalid_argument("Counting Bloom: negative count");
  }
}

std::uint64_t CountBundle::mass() const noexcept {
  std::uint64_t s = 0;
  for (auto c : counts_) s += static_cast<std::uint64_t>(c);
  return s;
}

CountBundle CountBundle::operator+(const CountBundle& other) const {
  require_same(*this, other);
  std::vector<std::int32_t> out(counts_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = counts_[i] + other.counts_[i];
  return CountBundle(cb_, std::move(out));
}

CountBundle bundle_count(const Codebook& cb, const SymbolSet& v) {
  require_exact(cb);
  if (v.universe() != cb.d()) throw std::invalid_argument("bundle_count: symbol universe differs from codebook d");
  if (v.l1_norm() > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::overflow_error("bundle_count: weights overflow the counters");
  }
  std::vector<std::int32_t> counts(cb.m(), 0);
  for (const auto& [id, w] : v.entries()) cb.accumulate(id, static_cast<std::int32_t>(w), counts);
  return CountBundle(cb, std::move(counts));
}

std::uint64_t raw_wedgedot(const CountBundle& a, const CountBundle& b) {
  require_same(a, b);
  std::uint64_t s = 0;
  const auto x = a.counts();
  const auto y = b.counts();
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<std::uint64_t>(std::min(x[i], y[i]));
  return s;
}

double generalized_intersection_estimate(const CountBundle& a, const CountBundle& b) {
  return static_cast<double>(raw_wedgedot(a, b)) / a.k();
}

double l1_distance_estimate(const CountBundle& a, const CountBundle& b, std::uint64_t v_l1, std::uint64_t w_l1) {
  // Integer numerator so identical inputs give exactly 0.
  const auto k = static_cast<std::int64_t>(a.k());
  const std::int64_t num = k * static_cast<std::int64_t>(v_l1 + w_l1) - 2 * static_cast<std::int64_t>(raw_wedgedot(a, b));
  return static_cast<double>(num) / static_cast<double>(k);
}

SizingResult sizing_cbloom(double eps, double delta, double K_b, double n_v, double n_w) {
  SizingParams p;
  p.eps = eps;
  p.delta = delta;
  p.K_b = K_b;
  p.n_v = n_v;
  p.n_w = n_w;
  return sizing_cbloom(p);
}

SizingResult sizing_cbloom(const SizingParams& p) {
  const double eps = p.require_eps();
  const double delta = p.require_delta();
  const double K_b = p.require("K_b");
  const double n_v = p.require("n_v");
  const double n_w = p.require("n_w");
  const double ck = default_constant("cbloom.k");
  const double cm = p.C ? detail::leading_constant(p, "cbloom.m") : default_constant("cbloom.m");
  const double k_exact = ck * K_b * std::log(1.0 / delta) / eps;
  const std::uint64_t k = std::max<std::uint64_t>(1, tolerant_ceil(k_exact));
  const double m_exact = cm * static_cast<double>(k) * n_v * n_w / eps;
  auto r = detail::finish("cbloom: k=ceil((2*K_b/3)*ln(1/delta)/eps), m=ceil(12*pi^2*k*n_v*n_w/eps)", m_exact, p,
                          {{"ck", ck}, {"cm", cm}});
  // Exactly-k columns need k distinct rows.
  r.m = std::max(r.m, k);
  r.k = k;
  r.k_exact = k_exact;
  return r;
}

}  // namespace vsacap
