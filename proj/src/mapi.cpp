#include "vsacap/mapi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vsacap {

namespace {

constexpr std::uint64_t kMaxMass = std::numeric_limits<std::int32_t>::max();

void require_same(const MapIBundle& a, const MapIBundle& b) {
  if (!(a.codebook() == b.codebook())) throw std::invalid_argument("MAP-I: bundles use different codebooks");
}

void require_scaled(const MapIBundle& b, const char* what) {
  if (!b.scaled()) throw std::invalid_argument(std::string(what) + ": requires a scaled codebook");
}

void require_universe(const Codebook& cb, std::uint64_t d) {
  if (d != cb.d()) throw std::invalid_argument("MAP-I: symbol universe differs from codebook d");
}

void accumulate_set(const Codebook& cb, const SymbolSet& v, std::span<std::int32_t> acc) {
  if (v.l1_norm() > kMaxMass) throw std::overflow_error("MAP-I: set weight overflows the accumulator");
  for (const auto& [id, w] : v.entries()) cb.accumulate(id, static_cast<std::int32_t>(w), acc);
}

}  // namespace

MapIBundle::MapIBundle(Codebook cb, std::vector<std::int32_t> acc) : cb_(std::move(cb)), acc_(std::move(acc)) {
  if (acc_.size() != cb_.m()) throw std::invalid_argument("MAP-I: accumulator length differs from m");
}

double MapIBundle::scale_sq() const noexcept {
  if (!cb_.scaled()) return 1.0;
  if (cb_.kind() == CodebookKind::sparse_jl) return 1.0 / cb_.k();
  if (cb_.is_sparse_binary()) return 1.0 / (static_cast<double>(cb_.k()) * cb_.k());
  return 1.0 / static_cast<double>(cb_.m());
}

Hypervector MapIBundle::vector() const {
  if (cb_.scaled()) return Hypervector(Domain::scaled_real, acc_, cb_.column_scale());
  return Hypervector(Domain::integer, acc_);
}

MapIBundle MapIBundle::operator+(const MapIBundle& other) const {
  require_same(*this, other);
  std::vector<std::int32_t> out(acc_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc_[i] + other.acc_[i];
  return MapIBundle(cb_, std::move(out));
}

MapIBundle MapIBundle::operator-(const MapIBundle& other) const {
  require_same(*this, other);
  std::vector<std::int32_t> out(acc_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc_[i] - other.acc_[i];
  return MapIBundle(cb_, std::move(out));
}

MapIBundle bundle(const Codebook& cb, const SymbolSet& v) {
  if (!cb.is_sign_kind() || cb.kind() == CodebookKind::srht) {
    throw std::invalid_argument("MAP-I bundle: needs a dense-sign or explicit-sign codebook, got " +
                                std::string(to_string(cb.kind())));
  }
  return sketch(cb, v);
}

MapIBundle sketch(const Codebook& cb, const SymbolSet& v) {
  if (cb.is_sparse_binary()) throw std::invalid_argument("MAP-I sketch: sparse binary codebooks are not JL maps");
  require_universe(cb, v.universe());
  std::vector<std::int32_t> acc(cb.m(), 0);
  accumulate_set(cb, v, acc);
  return MapIBundle(cb, std::move(acc));
}

std::int64_t raw_norm_sq(const MapIBundle& b) { return raw_dot(b.raw(), b.raw()); }

std::int64_t raw_dot(const MapIBundle& a, const MapIBundle& b) {
  require_same(a, b);
  return raw_dot(a.raw(), b.raw());
}

double norm_sq_estimate(const MapIBundle& b) {
  require_scaled(b, "norm_sq_estimate");
  return static_cast<double>(raw_norm_sq(b)) * b.scale_sq();
}

double dot_estimate(const MapIBundle& a, const MapIBundle& b) {
  require_same(a, b);
  require_scaled(a, "dot_estimate");
  return static_cast<double>(raw_dot(a, b)) * a.scale_sq();
}

std::uint64_t intersection_estimate(const MapIBundle& a, const MapIBundle& b) {
  const double r = std::round(dot_estimate(a, b));
  return r <= 0 ? 0 : static_cast<std::uint64_t>(r);
}

double symdiff_estimate(const MapIBundle& a, const MapIBundle& b) {
  const auto diff = a - b;
  return static_cast<double>(raw_norm_sq(diff)) * a.scale_sq();
}

double cosine_estimate(const MapIBundle& a, const MapIBundle& b) {
  const auto ab = raw_dot(a, b);
  const auto aa = raw_norm_sq(a);
  const auto bb = raw_norm_sq(b);
  if (aa == 0 || bb == 0) return 0.0;
  return static_cast<double>(ab) / std::sqrt(static_cast<double>(aa) * static_cast<double>(bb));
}

MapIBundle encode_sequence(const Codebook& cb, const SequenceSpec& seq) {
  if (!cb.is_sign_kind() || cb.kind() == CodebookKind::srht) {
    throw std::invalid_argument("encode_sequence: needs a dense-sign codebook");
  }
  seq.validate();
  require_universe(cb, seq.universe());
  const std::uint64_t m = cb.m();
  std::vector<std::int32_t> acc(m, 0), part(m);
  for (std::size_t l = 0; l < seq.length(); ++l) {
    std::fill(part.begin(), part.end(), 0);
    accumulate_set(cb, seq.sets[l], part);
    const std::uint64_t s = l % m;
    for (std::uint64_t i = 0; i < m; ++i) {
      const std::uint64_t src = i + s < m ? i + s : i + s - m;
      acc[i] += part[src];
    }
  }
  return MapIBundle(cb, std::move(acc));
}

MapIBundle encode_binding_bundle(const Codebook& cb, const BindingBundleSpec& spec) {
  if (!cb.is_sign_kind() || cb.kind() == CodebookKind::srht) {
    throw std::invalid_argument("encode_binding_bundle: needs a dense-sign codebook");
  }
  spec.validate();
  require_universe(cb, spec.d);
  const std::uint64_t m = cb.m();
  std::vector<std::int32_t> acc(m, 0), prod(m), col(m);
  for (const auto& edge : spec.edges) {
    std::fill(prod.begin(), prod.end(), 1);
    for (auto id : edge) {
      cb.column_into(id, col);
      for (std::uint64_t i = 0; i < m; ++i) prod[i] *= col[i];
    }
    for (std::uint64_t i = 0; i < m; ++i) acc[i] += prod[i];
  }
  return MapIBundle(cb, std::move(acc));
}

SizingResult sizing_mapi(std::string_view task, const SizingParams& p) {
  const std::string key = "mapi." + std::string(task);
  if (task == "pairs") {
    const double delta = p.require_delta();
    const double N = p.require("N"), M = p.require("M");
    const double C = detail::leading_constant(p, key);
    return detail::finish("mapi.pairs: C*N*ln(M/delta)", C * N * std::log(M / delta), p, {{"C", C}});
  }
  const double eps = p.require_eps();
  const double delta = p.require_delta();
  const double inv_eps2 = 1.0 / (eps * eps);
  if (task == "norm") {
    const double C = detail::leading_constant(p, key);
    return detail::finish("mapi.norm: C*eps^-2*ln(2/delta)", C * inv_eps2 * std::log(2.0 / delta), p, {{"C", C}});
  }
  if (task == "norm-sparse-jl") {
    const double C = detail::leading_constant(p, key);
    auto r = detail::finish("mapi.norm-sparse-jl: C*eps^-2*ln(2/delta), k=ceil(eps*m)",
                            C * inv_eps2 * std::log(2.0 / delta), p, {{"C", C}});
    r.k_exact = eps * static_cast<double>(r.m);
    r.k = std::clamp<std::uint64_t>(tolerant_ceil(*r.k_exact), 1, r.m);
    return r;
  }
  if (task == "norm-srht") {
    const double d = p.require("d");
    const double C = detail::leading_constant(p, key);
    const double ld = std::log(std::max(d, 2.0));
    auto r = detail::finish("mapi.norm-srht: C*eps^-2*ln(2/delta)*ln(d)^4, rounded up to a power of two",
                            C * inv_eps2 * std::log(2.0 / delta) * std::pow(ld, 4), p, {{"C", C}});
    r.m = std::bit_ceil(r.m);
    return r;
  }
  if (task == "sequence") {
    const double L = p.require("L");
    const double C = detail::leading_constant(p, key);
    return detail::finish("mapi.sequence: C*eps^-2*L^2*ln(L/delta)", C * inv_eps2 * L * L * std::log(L / delta), p,
                          {{"C", C}});
  }
  if (task == "sequence-symbols") {
    const double K = p.require("K");
    const double C = detail::leading_constant(p, key);
    return detail::finish("mapi.sequence-symbols: C*eps^-2*K^2*ln(K/(eps*delta))",
                          C * inv_eps2 * K * K * std::log(K / (eps * delta)), p, {{"C", C}});
  }
  if (task == "binding2") {
    const double v1 = p.require("v1");
    const double C = detail::leading_constant(p, key);
    const double l = std::log(v1 / (eps * delta));
    return detail::finish("mapi.binding2: C*eps^-2*ln(v1/(eps*delta))^3", C * inv_eps2 * l * l * l, p, {{"C", C}});
  }
  if (task == "bindingK") {
    const double v1 = p.require("v1");
    const double k = p.require("k");
    if (k < 2) throw std::invalid_argument("bindingK sizing needs k >= 2");
    const double C = detail::leading_constant(p, key);
    const double base = default_constant("mapi.bindingK.base");
    const double l = std::log(k * v1 / (eps * delta));
    return detail::finish("mapi.bindingK: C*eps^-2*Ck^(k*ln k)*ln(k*v1/(eps*delta))^(k+1)",
                          C * inv_eps2 * std::pow(base, k * std::log(k)) * std::pow(l, k + 1), p,
                          {{"C", C}, {"Ck", base}});
  }
  throw std::invalid_argument("unknown MAP-I sizing task: " + std::string(task));
}

}  // namespace vsacap
