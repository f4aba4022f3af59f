#pragma once

// Exact set and multiset algebra over a symbol universe [d].
// These are the ground truths every estimator is compared against.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

namespace vsacap {

// Sparse characteristic (or multiplicity) vector over [d].
class SymbolSet {
 public:
  explicit SymbolSet(std::uint64_t d);
  SymbolSet(std::uint64_t d, std::initializer_list<std::uint64_t> ids);
  SymbolSet(std::uint64_t d, std::span<const std::uint64_t> ids);

  // Adds `weight` to the multiplicity of `id`. Throws std::out_of_range.
  void add(std::uint64_t id, std::uint32_t weight = 1);
  // Sets the multiplicity; weight 0 removes the symbol.
  void set(std::uint64_t id, std::uint32_t weight);

  std::uint64_t universe() const noexcept { return d_; }
  const std::map<std::uint64_t, std::uint32_t>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  std::uint32_t weight(std::uint64_t id) const;
  bool contains(std::uint64_t id) const { return entries_.count(id) != 0; }

  std::uint64_t l1_norm() const noexcept;
  std::uint32_t linf_norm() const noexcept;
  bool is_binary() const noexcept;
  // Throws std::invalid_argument when a weight exceeds 1.
  void require_binary(const char* what) const;

  SymbolSet operator+(const SymbolSet& other) const;

  nlohmann::json to_json() const;
  static SymbolSet from_json(const nlohmann::json& j);

  friend bool operator==(const SymbolSet&, const SymbolSet&) = default;

 private:
  std::uint64_t d_;
  std::map<std::uint64_t, std::uint32_t> entries_;
};

// Sum of products; |X ∩ Y| for 0/1 sets.
std::uint64_t intersection_size(const SymbolSet& a, const SymbolSet& b);
// Sum of coordinate minima.
std::uint64_t wedgedot(const SymbolSet& a, const SymbolSet& b);
// ||a - b||^2 of 0/1 sets; rejects weighted input.
std::uint64_t symmetric_difference_size(const SymbolSet& a, const SymbolSet& b);
// ||a - b||_1 of weighted sets.
std::uint64_t l1_distance(const SymbolSet& a, const SymbolSet& b);

// Sequence of L sets over one universe (rotation encoding).
struct SequenceSpec {
  std::vector<SymbolSet> sets;

  std::size_t length() const noexcept { return sets.size(); }
  std::uint64_t universe() const;
  // K: the largest total multiplicity of any symbol across the sequence.
  std::uint32_t overlap() const;
  // Concatenated vector over [L*d]; entry l*d + j is the weight of j in set l.
  SymbolSet flatten() const;
  void validate() const;
};

// Hyperedges of a k-uniform hypergraph over [d].
struct BindingBundleSpec {
  std::uint64_t d = 0;
  std::uint32_t k = 2;
  std::vector<std::vector<std::uint64_t>> edges;

  // Throws on wrong arity, repeated ids within an edge, duplicate edges or ids >= d.
  void validate() const;
};

}  // namespace vsacap
