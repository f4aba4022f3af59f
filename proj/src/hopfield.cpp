#include "vsacap/hopfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vsacap/rng.hpp"

namespace vsacap {

namespace {

void require_probe(const Hypervector& y, std::uint64_t m) {
  if (y.size() != m) throw std::invalid_argument("Hopfield: probe length differs from m");
  for (auto v : y.raw()) {
    if (v < -1 || v > 1) throw std::invalid_argument("Hopfield: probe entries must be in {-1, 0, 1}");
  }
}

Hypervector signge_vector(std::span<const std::int64_t> z) {
  std::vector<std::int32_t> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = signge(z[i]);
  return Hypervector(Domain::sign, std::move(out));
}

template <typename Net>
RecallResult iterate(const Net& net, const Hypervector& y, std::uint32_t max_iters) {
  RecallResult r{y, false, 0};
  while (r.iterations < max_iters) {
    auto next = recall_step(net, r.state);
    ++r.iterations;
    const bool fixed = next == r.state;
    r.state = std::move(next);
    if (fixed) {
      r.converged = true;
      break;
    }
  }
  return r;
}

double hopfield_rhs(double n, double m, double delta) { return 4.0 * n * std::log(2.0 * m / delta); }

}  // namespace

HopfieldNet::HopfieldNet(std::uint64_t m, std::uint64_t n, std::vector<std::int32_t> weights)
    : m_(m), n_(n), w_(std::move(weights)) {
  if (w_.size() != m_ * m_) throw std::invalid_argument("Hopfield: weight matrix is not m x m");
  for (std::uint64_t i = 0; i < m_; ++i) {
    if (w_[i * m_ + i] != 0) throw std::invalid_argument("Hopfield: nonzero diagonal");
    for (std::uint64_t j = i + 1; j < m_; ++j) {
      if (w_[i * m_ + j] != w_[j * m_ + i]) throw std::invalid_argument("Hopfield: asymmetric weights");
    }
  }
}

HopfieldNet train(std::span<const Hypervector> patterns) {
  if (patterns.empty()) throw std::invalid_argument("train: no patterns");
  const std::uint64_t m = patterns.front().size();
  std::vector<std::int32_t> w(m * m, 0);
  for (const auto& x : patterns) {
    if (x.domain() != Domain::sign) throw std::invalid_argument("train: patterns must be sign vectors");
    if (x.size() != m) throw std::invalid_argument("train: patterns differ in length");
    const auto r = x.raw();
    for (std::uint64_t i = 0; i < m; ++i) {
      std::int32_t* row = w.data() + i * m;
      const std::int32_t xi = r[i];
      for (std::uint64_t j = 0; j < m; ++j) row[j] += xi * r[j];
    }
  }
  // Subtracting n I zeroes the diagonal, since every x_i^2 = 1.
  for (std::uint64_t i = 0; i < m; ++i) w[i * m + i] -= static_cast<std::int32_t>(patterns.size());
  return HopfieldNet(m, patterns.size(), std::move(w));
}

ThinnedNet::ThinnedNet(const HopfieldNet& net, std::vector<std::uint64_t> keep) : m_(net.m()), keep_(std::move(keep)) {
  if (keep_.empty()) throw std::invalid_argument("thin: keep set is empty");
  std::sort(keep_.begin(), keep_.end());
  keep_.erase(std::unique(keep_.begin(), keep_.end()), keep_.end());
  if (keep_.back() >= m_) throw std::out_of_range("thin: column index beyond m");
  w_.resize(m_ * keep_.size());
  for (std::uint64_t i = 0; i < m_; ++i) {
    for (std::size_t c = 0; c < keep_.size(); ++c) w_[i * keep_.size() + c] = net.weight(i, keep_[c]);
  }
}

void ThinnedNet::apply(std::span<const std::int32_t> y, std::span<std::int64_t> out) const {
  const std::size_t kc = keep_.size();
  for (std::uint64_t i = 0; i < m_; ++i) {
    const std::int32_t* row = w_.data() + i * kc;
    std::int64_t s = 0;
    for (std::size_t c = 0; c < kc; ++c) s += static_cast<std::int64_t>(row[c]) * y[keep_[c]];
    out[i] = s;
  }
}

ThinnedNet thin(const HopfieldNet& net, std::vector<std::uint64_t> keep) { return ThinnedNet(net, std::move(keep)); }

Hypervector recall_step(const HopfieldNet& net, const Hypervector& y) {
  const std::uint64_t m = net.m();
  require_probe(y, m);
  const auto yr = y.raw();
  const auto w = net.weights();
  std::vector<std::int64_t> z(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::int32_t* row = w.data() + i * m;
    std::int64_t s = 0;
    for (std::uint64_t j = 0; j < m; ++j) s += static_cast<std::int64_t>(row[j]) * yr[j];
    z[i] = s;
  }
  return signge_vector(z);
}

Hypervector recall_step(const ThinnedNet& net, const Hypervector& y) {
  require_probe(y, net.m());
  std::vector<std::int64_t> z(net.m());
  net.apply(y.raw(), z);
  return signge_vector(z);
}

RecallResult recall(const HopfieldNet& net, const Hypervector& y, std::uint32_t max_iters) {
  require_probe(y, net.m());
  return iterate(net, y, max_iters);
}

RecallResult recall(const ThinnedNet& net, const Hypervector& y, std::uint32_t max_iters) {
  require_probe(y, net.m());
  return iterate(net, y, max_iters);
}

Hypervector corrupt(const Hypervector& x, std::uint64_t erasures, std::uint64_t flips, std::uint64_t seed) {
  const std::uint64_t m = x.size();
  if (erasures > m || flips > m - erasures) throw std::invalid_argument("corrupt: erasures + flips exceed m");
  std::vector<std::int32_t> out(x.raw().begin(), x.raw().end());
  // Partial Fisher-Yates: the first erasures + flips slots are the chosen positions.
  std::vector<std::uint64_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  rng::Stream s(seed, rng::Tag::corruption, 0);
  const std::uint64_t total = erasures + flips;
  for (std::uint64_t t = 0; t < total; ++t) {
    const std::uint64_t r = t + s.below(m - t);
    std::swap(idx[t], idx[r]);
  }
  for (std::uint64_t t = 0; t < erasures; ++t) out[idx[t]] = 0;
  for (std::uint64_t t = erasures; t < total; ++t) out[idx[t]] = -out[idx[t]];
  return Hypervector(Domain::integer, std::move(out));
}

SizingResult sizing_hopfield(double n, double delta) {
  SizingParams p;
  p.n = n;
  p.delta = delta;
  return sizing_hopfield_task("store", p);
}

double probe_threshold(double n, std::uint64_t m, double delta) {
  return 2.0 * std::sqrt(n * std::log(2.0 * static_cast<double>(m) / delta));
}

HpmBundle::HpmBundle(Codebook cb, std::uint64_t d_seed, std::vector<std::int64_t> matrix)
    : cb_(std::move(cb)), d_seed_(d_seed), raw_(std::move(matrix)) {
  if (raw_.size() != cb_.m() * cb_.m()) throw std::invalid_argument("Hopfield+-: matrix is not m x m");
}

double HpmBundle::entry(std::uint64_t a, std::uint64_t b) const {
  return static_cast<double>(raw_.at(a * m() + b)) / static_cast<double>(m());
}

std::vector<double> HpmBundle::matrix() const {
  std::vector<double> out(raw_.size());
  const double s = 1.0 / static_cast<double>(m());
  for (std::size_t i = 0; i < raw_.size(); ++i) out[i] = static_cast<double>(raw_[i]) * s;
  return out;
}

int hpm_diagonal_sign(std::uint64_t d_seed, std::uint64_t j) {
  const rng::Stream s(d_seed, rng::Tag::hpm_diagonal, 0);
  return ((s.at(j >> 6) >> (j & 63)) & 1u) ? 1 : -1;
}

HpmBundle hpm_encode(const Codebook& cb, const SymbolSet& v, std::uint64_t d_seed) {
  if (!cb.is_sign_kind()) throw std::invalid_argument("hpm_encode: needs a sign codebook");
  if (!cb.scaled()) throw std::invalid_argument("hpm_encode: needs a scaled codebook");
  if (v.universe() != cb.d()) throw std::invalid_argument("hpm_encode: symbol universe differs from codebook d");
  const std::uint64_t m = cb.m();
  std::vector<std::int64_t> raw(m * m, 0);
  std::vector<std::int32_t> col(m);
  for (const auto& [j, w] : v.entries()) {
    cb.column_into(j, col);
    const std::int64_t c = static_cast<std::int64_t>(w) * hpm_diagonal_sign(d_seed, j);
    for (std::uint64_t a = 0; a < m; ++a) {
      std::int64_t* row = raw.data() + a * m;
      const std::int64_t ca = c * col[a];
      for (std::uint64_t b = 0; b < m; ++b) row[b] += ca * col[b];
    }
  }
  return HpmBundle(cb, d_seed, std::move(raw));
}

double hpm_norm_estimate(const HpmBundle& b) { return hpm_dot_estimate(b, b); }

double hpm_dot_estimate(const HpmBundle& a, const HpmBundle& b) {
  if (!(a.codebook() == b.codebook())) throw std::invalid_argument("Hopfield+-: bundles use different codebooks");
  if (a.d_seed() != b.d_seed()) throw std::invalid_argument("Hopfield+-: bundles use different sign diagonals");
  // tr(M1 M2) = sum_ab M1_ab M2_ba; both are symmetric.
  long double s = 0;
  const auto x = a.raw();
  const auto y = b.raw();
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long double>(x[i]) * static_cast<long double>(y[i]);
  const double m = static_cast<double>(a.m());
  return static_cast<double>(s / (static_cast<long double>(m) * m));
}

SizingResult sizing_hopfield_task(std::string_view task, const SizingParams& p) {
  const double delta = p.require_delta();
  if (task == "store") {
    const double n = p.require("n");
    if (n <= 0) throw std::invalid_argument("hopfield sizing needs n > 0");
    const double C = detail::leading_constant(p, "hopfield.store");
    const auto rhs = [&](double m) { return C / 4.0 * hopfield_rhs(n, m, delta); };
    double m = rhs(n);
    int iters = 0;
    for (; iters < 100; ++iters) {
      const double next = rhs(std::max(m, 1.0));
      if (std::abs(next - m) <= 1e-9 * std::max(1.0, m)) {
        m = next;
        break;
      }
      m = next;
    }
    if (iters == 100) throw std::runtime_error("hopfield sizing: fixed-point iteration did not converge");
    auto r = detail::finish("hopfield.store: smallest m with m >= C*n*ln(2m/delta)", m, p,
                            {{"C", C}, {"iterations", static_cast<double>(iters)}});
    while (static_cast<double>(r.m) < rhs(static_cast<double>(r.m))) ++r.m;
    return r;
  }
  const double eps = p.require_eps();
  const double d = p.require("d");
  const double l = std::log(d / delta);
  if (task == "hpm-norm") {
    const double C = detail::leading_constant(p, "hopfield.hpm-norm");
    return detail::finish("hopfield.hpm-norm: C*eps^-1*ln(d/delta)^2", C / eps * l * l, p, {{"C", C}});
  }
  if (task == "hpm-product") {
    const double C = detail::leading_constant(p, "hopfield.hpm-product");
    return detail::finish("hopfield.hpm-product: C*eps^-2*ln(d/delta)^2", C / (eps * eps) * l * l, p, {{"C", C}});
  }
  throw std::invalid_argument("unknown Hopfield sizing task: " + std::string(task));
}

}  // namespace vsacap
