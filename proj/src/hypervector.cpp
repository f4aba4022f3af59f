#include "vsacap/hypervector.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vsacap {

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::sign: return "sign";
    case Domain::integer: return "integer";
    case Domain::binary: return "binary";
    case Domain::count: return "count";
    case Domain::scaled_real: return "scaled-real";
  }
  return "unknown";
}

Domain domain_from_string(std::string_view name) {
  for (auto d : {Domain::sign, Domain::integer, Domain::binary, Domain::count, Domain::scaled_real}) {
    if (to_string(d) == name) return d;
  }
  throw std::invalid_argument("unknown domain: " + std::string(name));
}

bool satisfies_domain(Domain domain, std::span<const std::int32_t> values) {
  switch (domain) {
    case Domain::sign:
      return std::all_of(values.begin(), values.end(), [](std::int32_t v) { return v == 1 || v == -1; });
    case Domain::binary:
      return std::all_of(values.begin(), values.end(), [](std::int32_t v) { return v == 0 || v == 1; });
    case Domain::count:
      return std::all_of(values.begin(), values.end(), [](std::int32_t v) { return v >= 0; });
    case Domain::integer:
    case Domain::scaled_real:
      return true;
  }
  return false;
}

Hypervector::Hypervector(Domain domain, std::vector<std::int32_t> values, double scale)
    : domain_(domain), values_(std::move(values)), scale_(scale) {
  if (!satisfies_domain(domain_, values_)) {
    throw std::invalid_argument("hypervector entries violate the " + std::string(to_string(domain_)) + " domain");
  }
  if (domain_ != Domain::scaled_real && scale_ != 1.0) {
    throw std::invalid_argument("only scaled-real hypervectors carry a scale");
  }
}

Hypervector Hypervector::zeros(Domain domain, std::size_t m, double scale) {
  if (domain == Domain::sign) throw std::invalid_argument("a sign hypervector cannot be all zeros");
  return Hypervector(domain, std::vector<std::int32_t>(m, 0), scale);
}

std::vector<double> Hypervector::to_real() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [this](std::int32_t v) { return scale_ * v; });
  return out;
}

void rotate_into(std::span<const std::int32_t> x, std::uint64_t shift, std::span<std::int32_t> out) {
  const std::size_t m = x.size();
  if (out.size() != m) throw std::invalid_argument("rotate: output length mismatch");
  if (m == 0) return;
  const std::size_t s = shift % m;
  std::rotate_copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(s), x.end(), out.begin());
}

Hypervector rotate(const Hypervector& x, Rotation r) {
  std::vector<std::int32_t> out(x.size());
  rotate_into(x.raw(), r.shift, out);
  return Hypervector(x.domain(), std::move(out), x.scale());
}

Hypervector bind(std::span<const Hypervector> columns) {
  if (columns.empty()) throw std::invalid_argument("bind: no columns");
  const std::size_t m = columns.front().size();
  std::vector<std::int32_t> out(m, 1);
  for (const auto& c : columns) {
    if (c.domain() != Domain::sign) throw std::invalid_argument("bind: all inputs must be sign vectors");
    if (c.size() != m) throw std::invalid_argument("bind: length mismatch");
    const auto raw = c.raw();
    for (std::size_t i = 0; i < m; ++i) out[i] *= raw[i];
  }
  return Hypervector(Domain::sign, std::move(out));
}

Hypervector add(const Hypervector& a, const Hypervector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: length mismatch");
  if (a.scale() != b.scale()) throw std::invalid_argument("add: scale mismatch");
  std::vector<std::int32_t> out(a.size());
  const auto ra = a.raw();
  const auto rb = b.raw();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ra[i] + rb[i];
  Domain domain = Domain::integer;
  if (a.domain() == Domain::scaled_real || b.domain() == Domain::scaled_real) {
    domain = Domain::scaled_real;
  } else if (a.domain() == Domain::count && b.domain() == Domain::count) {
    domain = Domain::count;
  }
  return Hypervector(domain, std::move(out), a.scale());
}

std::int64_t raw_dot(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
  return s;
}

double dot(const Hypervector& a, const Hypervector& b) {
  return a.scale() * b.scale() * static_cast<double>(raw_dot(a.raw(), b.raw()));
}

}  // namespace vsacap
