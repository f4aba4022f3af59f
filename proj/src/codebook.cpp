#include "vsacap/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "vsacap/rng.hpp"

namespace vsacap {

namespace {

constexpr std::uint64_t kMaxDimension = std::uint64_t{1} << 31;
constexpr std::uint64_t kMaxMaterialized = std::uint64_t{1} << 28;

rng::Tag tag_for(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::dense_sign: return rng::Tag::dense_sign;
    case CodebookKind::sparse_binary_trials: return rng::Tag::sparse_trials;
    case CodebookKind::sparse_binary_exact: return rng::Tag::sparse_exact;
    case CodebookKind::srht: return rng::Tag::srht_diagonal;
    case CodebookKind::sparse_jl: return rng::Tag::sparse_jl;
    case CodebookKind::explicit_sign: return rng::Tag::dense_sign;
  }
  return rng::Tag::dense_sign;
}

// First k distinct values of the stream's uniform draws on [0, m).
std::vector<std::uint32_t> distinct_draws(rng::Stream& s, std::uint64_t m, std::uint32_t k) {
  std::vector<std::uint32_t> picked;
  picked.reserve(k);
  while (picked.size() < k) {
    const auto r = static_cast<std::uint32_t>(s.below(m));
    auto it = std::lower_bound(picked.begin(), picked.end(), r);
    if (it == picked.end() || *it != r) picked.insert(it, r);
  }
  return picked;
}

}  // namespace

std::string_view to_string(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::dense_sign: return "dense-sign";
    case CodebookKind::sparse_binary_trials: return "sparse-binary-trials";
    case CodebookKind::sparse_binary_exact: return "sparse-binary-exact";
    case CodebookKind::srht: return "srht";
    case CodebookKind::sparse_jl: return "sparse-jl";
    case CodebookKind::explicit_sign: return "explicit-sign";
  }
  return "unknown";
}

CodebookKind codebook_kind_from_string(std::string_view name) {
  for (auto k : {CodebookKind::dense_sign, CodebookKind::sparse_binary_trials, CodebookKind::sparse_binary_exact,
                 CodebookKind::srht, CodebookKind::sparse_jl, CodebookKind::explicit_sign}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown codebook kind: " + std::string(name));
}

Codebook::Codebook(const CodebookParams& params) : params_(params) {
  const auto& p = params_;
  if (p.m == 0 || p.d == 0) throw std::invalid_argument("codebook: m and d must be positive");
  if (p.m >= kMaxDimension) throw std::invalid_argument("codebook: m too large");
  switch (p.kind) {
    case CodebookKind::dense_sign:
      params_.k = 0;
      break;
    case CodebookKind::sparse_binary_trials:
      if (p.k == 0) throw std::invalid_argument("codebook: sparse kinds need k >= 1");
      break;
    case CodebookKind::sparse_binary_exact:
    case CodebookKind::sparse_jl:
      if (p.k == 0) throw std::invalid_argument("codebook: sparse kinds need k >= 1");
      if (p.k > p.m) throw std::invalid_argument("codebook: k distinct nonzeros need k <= m");
      break;
    case CodebookKind::srht: {
      params_.k = 0;
      if (!std::has_single_bit(p.m)) throw std::invalid_argument("codebook: srht needs m a power of two");
      if (p.d > (std::uint64_t{1} << 62)) throw std::invalid_argument("codebook: d too large for srht");
      hadamard_order_ = std::bit_ceil(std::max(p.m, p.d));
      // Floyd's sampling of m distinct rows out of the Hadamard order.
      rng::Stream s(p.seed, rng::Tag::srht_rows, 0);
      std::unordered_set<std::uint64_t> chosen;
      chosen.reserve(p.m * 2);
      for (std::uint64_t j = hadamard_order_ - p.m; j < hadamard_order_; ++j) {
        const std::uint64_t t = s.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
      }
      srht_rows_.assign(chosen.begin(), chosen.end());
      std::sort(srht_rows_.begin(), srht_rows_.end());
      break;
    }
    case CodebookKind::explicit_sign:
      throw std::invalid_argument("codebook: explicit-sign codebooks are built with from_columns");
  }
  fingerprint_ = rng::fnv1a(to_json().dump());
}

Codebook Codebook::from_columns(const std::vector<std::vector<std::int32_t>>& columns, bool scaled) {
  if (columns.empty() || columns.front().empty()) throw std::invalid_argument("codebook: empty explicit matrix");
  Codebook cb;
  cb.params_ = {CodebookKind::explicit_sign, columns.front().size(), columns.size(), 0, 0, scaled};
  cb.explicit_.reserve(cb.params_.m * cb.params_.d);
  for (const auto& col : columns) {
    if (col.size() != cb.params_.m) throw std::invalid_argument("codebook: ragged explicit matrix");
    for (auto v : col) {
      if (v != 1 && v != -1) throw std::invalid_argument("codebook: explicit columns must be +-1");
      cb.explicit_.push_back(static_cast<std::int8_t>(v));
    }
  }
  cb.fingerprint_ = rng::fnv1a(cb.to_json().dump());
  return cb;
}

bool Codebook::is_sign_kind() const noexcept {
  return params_.kind == CodebookKind::dense_sign || params_.kind == CodebookKind::srht ||
         params_.kind == CodebookKind::explicit_sign;
}

bool Codebook::is_sparse_binary() const noexcept {
  return params_.kind == CodebookKind::sparse_binary_trials || params_.kind == CodebookKind::sparse_binary_exact;
}

double Codebook::column_scale() const noexcept {
  if (!params_.scaled) return 1.0;
  if (is_sparse_binary()) return 1.0 / params_.k;
  if (params_.kind == CodebookKind::sparse_jl) return 1.0 / std::sqrt(static_cast<double>(params_.k));
  return 1.0 / std::sqrt(static_cast<double>(params_.m));
}

void Codebook::check_symbol(std::uint64_t j) const {
  if (j >= params_.d) {
    throw std::out_of_range("symbol id " + std::to_string(j) + " out of range for d=" + std::to_string(params_.d));
  }
}

int Codebook::srht_diagonal(std::uint64_t j) const {
  const rng::Stream s(params_.seed, rng::Tag::srht_diagonal, 0);
  return ((s.at(j >> 6) >> (j & 63)) & 1u) ? 1 : -1;
}

int Codebook::srht_entry(std::uint64_t i, std::uint64_t j) const {
  if (params_.kind != CodebookKind::srht) throw std::invalid_argument("srht_entry: not an srht codebook");
  if (i >= params_.m) throw std::out_of_range("srht_entry: row out of range");
  check_symbol(j);
  return hadamard_entry(srht_rows_[i], j) * srht_diagonal(j);
}

void Codebook::trial_positions(std::uint64_t j, std::vector<std::uint32_t>& out) const {
  check_symbol(j);
  out.clear();
  rng::Stream s(params_.seed, tag_for(params_.kind), j);
  for (std::uint32_t t = 0; t < params_.k; ++t) out.push_back(static_cast<std::uint32_t>(s.below(params_.m)));
}

std::vector<std::uint32_t> Codebook::support(std::uint64_t j) const {
  check_symbol(j);
  switch (params_.kind) {
    case CodebookKind::sparse_binary_trials: {
      std::vector<std::uint32_t> pos;
      trial_positions(j, pos);
      std::sort(pos.begin(), pos.end());
      pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
      return pos;
    }
    case CodebookKind::sparse_binary_exact: {
      rng::Stream s(params_.seed, rng::Tag::sparse_exact, j);
      return distinct_draws(s, params_.m, params_.k);
    }
    case CodebookKind::sparse_jl: {
      std::vector<std::uint32_t> pos;
      for (const auto& [row, sign] : sparse_jl_entries(j)) pos.push_back(row);
      std::sort(pos.begin(), pos.end());
      return pos;
    }
    default: throw std::invalid_argument("support: dense codebook");
  }
}

std::vector<std::pair<std::uint32_t, int>> Codebook::sparse_jl_entries(std::uint64_t j) const {
  if (params_.kind != CodebookKind::sparse_jl) throw std::invalid_argument("sparse_jl_entries: wrong kind");
  check_symbol(j);
  rng::Stream s(params_.seed, rng::Tag::sparse_jl, j);
  const auto rows = distinct_draws(s, params_.m, params_.k);
  // Signs come from the same stream, after the position draws.
  std::vector<std::pair<std::uint32_t, int>> out;
  out.reserve(rows.size());
  std::uint64_t bits = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if ((t & 63) == 0) bits = s.next();
    out.emplace_back(rows[t], ((bits >> (t & 63)) & 1u) ? 1 : -1);
  }
  return out;
}

void Codebook::column_into(std::uint64_t j, std::span<std::int32_t> out) const {
  check_symbol(j);
  if (out.size() != params_.m) throw std::invalid_argument("column_into: output length mismatch");
  const std::uint64_t m = params_.m;
  switch (params_.kind) {
    case CodebookKind::dense_sign: {
      const rng::Stream s(params_.seed, rng::Tag::dense_sign, j);
      for (std::uint64_t w = 0; w * 64 < m; ++w) {
        const std::uint64_t bits = s.at(w);
        const std::uint64_t end = std::min<std::uint64_t>(64, m - w * 64);
        for (std::uint64_t b = 0; b < end; ++b) out[w * 64 + b] = ((bits >> b) & 1u) ? 1 : -1;
      }
      return;
    }
    case CodebookKind::srht: {
      const int dj = srht_diagonal(j);
      for (std::uint64_t i = 0; i < m; ++i) out[i] = hadamard_entry(srht_rows_[i], j) * dj;
      return;
    }
    case CodebookKind::explicit_sign: {
      const auto* col = explicit_.data() + j * m;
      for (std::uint64_t i = 0; i < m; ++i) out[i] = col[i];
      return;
    }
    case CodebookKind::sparse_jl:
      std::fill(out.begin(), out.end(), 0);
      for (const auto& [row, sign] : sparse_jl_entries(j)) out[row] = sign;
      return;
    case CodebookKind::sparse_binary_trials:
    case CodebookKind::sparse_binary_exact:
      std::fill(out.begin(), out.end(), 0);
      for (auto row : support(j)) out[row] = 1;
      return;
  }
}

void Codebook::accumulate(std::uint64_t j, std::int32_t weight, std::span<std::int32_t> acc) const {
  check_symbol(j);
  if (acc.size() != params_.m) throw std::invalid_argument("accumulate: length mismatch");
  const std::uint64_t m = params_.m;
  switch (params_.kind) {
    case CodebookKind::dense_sign: {
      const rng::Stream s(params_.seed, rng::Tag::dense_sign, j);
      for (std::uint64_t w = 0; w * 64 < m; ++w) {
        const std::uint64_t bits = s.at(w);
        const std::uint64_t end = std::min<std::uint64_t>(64, m - w * 64);
        std::int32_t* dst = acc.data() + w * 64;
        for (std::uint64_t b = 0; b < end; ++b) {
          // bit set -> +weight, clear -> -weight
          dst[b] += weight * (static_cast<std::int32_t>((bits >> b) & 1u) * 2 - 1);
        }
      }
      return;
    }
    case CodebookKind::sparse_jl:
      for (const auto& [row, sign] : sparse_jl_entries(j)) acc[row] += weight * sign;
      return;
    case CodebookKind::sparse_binary_trials:
    case CodebookKind::sparse_binary_exact:
      for (auto row : support(j)) acc[row] += weight;
      return;
    case CodebookKind::srht:
    case CodebookKind::explicit_sign: {
      std::vector<std::int32_t> col(m);
      column_into(j, col);
      for (std::uint64_t i = 0; i < m; ++i) acc[i] += weight * col[i];
      return;
    }
  }
}

Hypervector Codebook::atomic(std::uint64_t j) const {
  std::vector<std::int32_t> col(params_.m);
  column_into(j, col);
  if (params_.scaled) return Hypervector(Domain::scaled_real, std::move(col), column_scale());
  switch (params_.kind) {
    case CodebookKind::sparse_binary_trials:
    case CodebookKind::sparse_binary_exact: return Hypervector(Domain::binary, std::move(col));
    case CodebookKind::sparse_jl: return Hypervector(Domain::integer, std::move(col));
    default: return Hypervector(Domain::sign, std::move(col));
  }
}

std::vector<std::int32_t> Codebook::materialize() const {
  const std::uint64_t m = params_.m;
  const std::uint64_t d = params_.d;
  if (m * d > kMaxMaterialized) throw std::invalid_argument("materialize: matrix too large");
  std::vector<std::int32_t> full(m * d);
  if (params_.kind == CodebookKind::dense_sign) {
    // Row-block order: word w of every column before word w+1 of any column.
    for (std::uint64_t w = 0; w * 64 < m; ++w) {
      for (std::uint64_t j = 0; j < d; ++j) {
        const rng::Stream s(params_.seed, rng::Tag::dense_sign, j);
        const std::uint64_t bits = s.at(w);
        for (std::uint64_t b = 0; b < 64 && w * 64 + b < m; ++b) {
          full[j * m + w * 64 + b] = ((bits >> b) & 1u) ? 1 : -1;
        }
      }
    }
    return full;
  }
  if (params_.kind == CodebookKind::srht) {
    const rng::Stream s(params_.seed, rng::Tag::srht_diagonal, 0);
    for (std::uint64_t i = 0; i < m; ++i) {
      for (std::uint64_t j = 0; j < d; ++j) {
        const int dj = ((s.at(j >> 6) >> (j & 63)) & 1u) ? 1 : -1;
        full[j * m + i] = hadamard_entry(srht_rows_[i], j) * dj;
      }
    }
    return full;
  }
  for (std::uint64_t j = 0; j < d; ++j) {
    column_into(j, std::span<std::int32_t>(full.data() + j * m, m));
  }
  return full;
}

nlohmann::json Codebook::to_json() const {
  nlohmann::json j = {
      {"kind", std::string(to_string(params_.kind))},
      {"m", params_.m},
      {"d", params_.d},
      {"k", params_.k},
      {"seed", params_.seed},
      {"scaled", params_.scaled},
      {"rng_version", rng::version_string()},
  };
  if (params_.kind == CodebookKind::explicit_sign) {
    auto cols = nlohmann::json::array();
    for (std::uint64_t c = 0; c < params_.d; ++c) {
      auto col = nlohmann::json::array();
      for (std::uint64_t i = 0; i < params_.m; ++i) col.push_back(static_cast<int>(explicit_[c * params_.m + i]));
      cols.push_back(std::move(col));
    }
    j["columns"] = std::move(cols);
  }
  return j;
}

Codebook Codebook::from_json(const nlohmann::json& j) {
  const auto kind = codebook_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("rng_version") && j.at("rng_version").get<std::string>() != rng::version_string()) {
    throw std::invalid_argument("codebook generated with unsupported rng " + j.at("rng_version").get<std::string>());
  }
  const bool scaled = j.value("scaled", false);
  if (kind == CodebookKind::explicit_sign) {
    return from_columns(j.at("columns").get<std::vector<std::vector<std::int32_t>>>(), scaled);
  }
  CodebookParams p;
  p.kind = kind;
  p.m = j.at("m").get<std::uint64_t>();
  p.d = j.at("d").get<std::uint64_t>();
  p.k = j.value("k", std::uint32_t{0});
  p.seed = j.at("seed").get<std::uint64_t>();
  p.scaled = scaled;
  return Codebook(p);
}

int tie_sign(std::int64_t a, std::uint64_t tie_seed, std::uint64_t step, std::uint64_t coordinate) {
  if (a > 0) return 1;
  if (a < 0) return -1;
  const rng::Stream s(tie_seed, rng::Tag::tie_break, step);
  return ((s.at(coordinate >> 6) >> (coordinate & 63)) & 1u) ? 1 : -1;
}

}  // namespace vsacap
