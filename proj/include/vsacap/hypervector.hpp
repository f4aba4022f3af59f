#pragma once

// Dense hypervectors with a value-domain tag.
//
// Values are stored as integers. The scaled_real domain carries a common
// scale factor (typically 1/sqrt(m) or 1/k) so that bundling arithmetic stays
// exact and scaling is applied only where a real value is read out.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vsacap {

enum class Domain : std::uint8_t {
  sign = 0,         // entries in {-1, +1}
  integer = 1,      // arbitrary integers
  binary = 2,       // entries in {0, 1}
  count = 3,        // nonnegative integers
  scaled_real = 4,  // scale * integer
};

std::string_view to_string(Domain domain);
Domain domain_from_string(std::string_view name);

class Hypervector {
 public:
  Hypervector() = default;
  // Throws std::invalid_argument if the values violate the domain.
  Hypervector(Domain domain, std::vector<std::int32_t> values, double scale = 1.0);

  static Hypervector zeros(Domain domain, std::size_t m, double scale = 1.0);

  std::size_t size() const noexcept { return values_.size(); }
  Domain domain() const noexcept { return domain_; }
  double scale() const noexcept { return scale_; }

  // Integer representation (before applying scale).
  std::span<const std::int32_t> raw() const noexcept { return values_; }
  std::int32_t raw(std::size_t i) const { return values_.at(i); }

  // Real value of coordinate i.
  double operator[](std::size_t i) const { return scale_ * values_[i]; }

  std::vector<double> to_real() const;

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  Domain domain_ = Domain::integer;
  std::vector<std::int32_t> values_;
  double scale_ = 1.0;
};

// Checks the domain invariant; returns false instead of throwing.
bool satisfies_domain(Domain domain, std::span<const std::int32_t> values);

// Cyclic shift by `shift` (taken mod m): result[i] = x[(i + shift) mod m].
struct Rotation {
  std::uint64_t shift = 0;
};

Hypervector rotate(const Hypervector& x, Rotation r);
void rotate_into(std::span<const std::int32_t> x, std::uint64_t shift, std::span<std::int32_t> out);

// Coordinate-wise product of sign vectors. Throws on empty input, mixed
// domains or mismatched lengths.
Hypervector bind(std::span<const Hypervector> columns);

// Coordinate-wise sum; result domain is integer (or count if both are count).
Hypervector add(const Hypervector& a, const Hypervector& b);

// Exact inner product of the integer representations.
std::int64_t raw_dot(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
// Real inner product, scales applied.
double dot(const Hypervector& a, const Hypervector& b);

}  // namespace vsacap
