#include "vsacap/setalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace vsacap {

namespace {

void require_same_universe(const SymbolSet& a, const SymbolSet& b) {
  if (a.universe() != b.universe()) throw std::invalid_argument("symbol sets over different universes");
}

// Walks both sorted maps; f(weight_a, weight_b) for every id in either support.
template <typename F>
void merge_walk(const SymbolSet& a, const SymbolSet& b, F&& f) {
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  const auto ea = a.entries().end();
  const auto eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      f(ia->second, 0u);
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      f(0u, ib->second);
      ++ib;
    } else {
      f(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
}

}  // namespace

SymbolSet::SymbolSet(std::uint64_t d) : d_(d) {
  if (d == 0) throw std::invalid_argument("symbol universe must be nonempty");
}

SymbolSet::SymbolSet(std::uint64_t d, std::initializer_list<std::uint64_t> ids)
    : SymbolSet(d, std::span<const std::uint64_t>(ids.begin(), ids.size())) {}

SymbolSet::SymbolSet(std::uint64_t d, std::span<const std::uint64_t> ids) : SymbolSet(d) {
  for (auto id : ids) set(id, 1);
}

void SymbolSet::add(std::uint64_t id, std::uint32_t weight) {
  if (id >= d_) throw std::out_of_range("symbol id " + std::to_string(id) + " outside universe " + std::to_string(d_));
  if (weight == 0) return;
  entries_[id] += weight;
}

void SymbolSet::set(std::uint64_t id, std::uint32_t weight) {
  if (id >= d_) throw std::out_of_range("symbol id " + std::to_string(id) + " outside universe " + std::to_string(d_));
  if (weight == 0) {
    entries_.erase(id);
  } else {
    entries_[id] = weight;
  }
}

std::uint32_t SymbolSet::weight(std::uint64_t id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t SymbolSet::l1_norm() const noexcept {
  std::uint64_t s = 0;
  for (const auto& [id, w] : entries_) s += w;
  return s;
}

std::uint32_t SymbolSet::linf_norm() const noexcept {
  std::uint32_t s = 0;
  for (const auto& [id, w] : entries_) s = std::max(s, w);
  return s;
}

bool SymbolSet::is_binary() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second == 1; });
}

void SymbolSet::require_binary(const char* what) const {
  if (!is_binary()) throw std::invalid_argument(std::string(what) + ": requires a 0/1 set, got weights > 1");
}

SymbolSet SymbolSet::operator+(const SymbolSet& other) const {
  require_same_universe(*this, other);
  SymbolSet out = *this;
  for (const auto& [id, w] : other.entries_) out.add(id, w);
  return out;
}

nlohmann::json SymbolSet::to_json() const {
  auto entries = nlohmann::json::array();
  for (const auto& [id, w] : entries_) entries.push_back({id, w});
  return {{"d", d_}, {"entries", std::move(entries)}};
}

SymbolSet SymbolSet::from_json(const nlohmann::json& j) {
  SymbolSet s(j.at("d").get<std::uint64_t>());
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("symbol set entries must be [id, weight] pairs");
    const auto id = e[0].get<std::uint64_t>();
    const auto w = e[1].get<std::int64_t>();
    if (w < 1) throw std::invalid_argument("symbol set weights must be positive");
    if (s.contains(id)) throw std::invalid_argument("duplicate symbol id " + std::to_string(id));
    s.set(id, static_cast<std::uint32_t>(w));
  }
  return s;
}

std::uint64_t intersection_size(const SymbolSet& a, const SymbolSet& b) {
  require_same_universe(a, b);
  std::uint64_t s = 0;
  merge_walk(a, b, [&](std::uint64_t wa, std::uint64_t wb) { s += wa * wb; });
  return s;
}

std::uint64_t wedgedot(const SymbolSet& a, const SymbolSet& b) {
  require_same_universe(a, b);
  std::uint64_t s = 0;
  merge_walk(a, b, [&](std::uint32_t wa, std::uint32_t wb) { s += std::min(wa, wb); });
  return s;
}

std::uint64_t symmetric_difference_size(const SymbolSet& a, const SymbolSet& b) {
  require_same_universe(a, b);
  a.require_binary("symmetric_difference_size");
  b.require_binary("symmetric_difference_size");
  std::uint64_t s = 0;
  merge_walk(a, b, [&](std::uint32_t wa, std::uint32_t wb) { s += (wa != wb) ? 1 : 0; });
  return s;
}

std::uint64_t l1_distance(const SymbolSet& a, const SymbolSet& b) {
  require_same_universe(a, b);
  std::uint64_t s = 0;
  merge_walk(a, b, [&](std::uint32_t wa, std::uint32_t wb) { s += wa > wb ? wa - wb : wb - wa; });
  return s;
}

std::uint64_t SequenceSpec::universe() const {
  if (sets.empty()) throw std::invalid_argument("sequence must have at least one set");
  return sets.front().universe();
}

void SequenceSpec::validate() const {
  const auto d = universe();
  for (const auto& s : sets) {
    if (s.universe() != d) throw std::invalid_argument("sequence sets over different universes");
  }
}

std::uint32_t SequenceSpec::overlap() const {
  validate();
  SymbolSet total(universe());
  for (const auto& s : sets) total = total + s;
  return total.linf_norm();
}

SymbolSet SequenceSpec::flatten() const {
  validate();
  const auto d = universe();
  SymbolSet out(d * sets.size());
  for (std::size_t l = 0; l < sets.size(); ++l) {
    for (const auto& [id, w] : sets[l].entries()) out.set(l * d + id, w);
  }
  return out;
}

void BindingBundleSpec::validate() const {
  if (d == 0) throw std::invalid_argument("binding bundle: empty universe");
  if (k < 2) throw std::invalid_argument("binding bundle: arity must be at least 2");
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& e : edges) {
    if (e.size() != k) throw std::invalid_argument("binding bundle: mixed arities");
    auto sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("binding bundle: an edge repeats a symbol");
    }
    if (sorted.back() >= d) throw std::out_of_range("binding bundle: symbol id out of range");
    if (!seen.insert(sorted).second) throw std::invalid_argument("binding bundle: duplicate edge");
  }
}

}  // namespace vsacap
