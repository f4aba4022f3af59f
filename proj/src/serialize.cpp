#include "vsacap/serialize.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace vsacap {

namespace {

constexpr std::uint64_t kMaxJson = 1u << 20;

template <typename T>
void put(std::ostream& os, T v) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(v);
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((u >> (8 * i)) & 0xffu);
  os.write(buf, sizeof buf);
}

template <typename T>
T get(std::istream& is) {
  using U = std::make_unsigned_t<T>;
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof buf)) throw IoError("truncated file");
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(static_cast<U>(buf[i]) << (8 * i));
  return static_cast<T>(u);
}

void expect_magic(std::istream& is, const char* magic) {
  char buf[4];
  if (!is.read(buf, 4) || std::memcmp(buf, magic, 4) != 0) throw IoError(std::string("not a ") + magic + " file");
  if (get<std::uint16_t>(is) != kFormatVersion) throw IoError("unsupported format version");
}

struct Header {
  Arch arch;
  Domain domain;
  std::uint64_t m;
  std::uint64_t fingerprint;
  std::uint64_t aux;
  std::uint32_t depth;
};

void write_header(std::ostream& os, const Header& h, const std::optional<Codebook>& cb) {
  os.write("VSAB", 4);
  put<std::uint16_t>(os, kFormatVersion);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(h.arch));
  put<std::uint8_t>(os, static_cast<std::uint8_t>(h.domain));
  put<std::uint64_t>(os, h.m);
  put<std::uint64_t>(os, h.fingerprint);
  put<std::uint64_t>(os, h.aux);
  put<std::uint32_t>(os, h.depth);
  const std::string json = cb ? cb->to_json().dump() : std::string();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(json.size()));
  os.write(json.data(), static_cast<std::streamsize>(json.size()));
}

std::vector<std::uint64_t> pack_signs(std::span<const std::int32_t> x) {
  std::vector<std::uint64_t> words((x.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) words[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return words;
}

template <typename T>
std::vector<T> get_n(std::istream& is, std::uint64_t n) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 24)));
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(get<T>(is));
  return out;
}

// Re-raises construction errors from corrupt payloads as IoError.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("corrupt file: ") + e.what());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return is;
}

}  // namespace

Arch arch_of(const AnyBundle& b) {
  static constexpr Arch kArch[] = {Arch::mapi, Arch::mapb, Arch::bloom, Arch::cbloom, Arch::hopfield};
  return kArch[b.index()];
}

void write_bundle(std::ostream& os, const AnyBundle& any) {
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MapIBundle>) {
          const auto& cb = b.codebook();
          write_header(os, {Arch::mapi, b.scaled() ? Domain::scaled_real : Domain::integer, cb.m(),
                            cb.fingerprint(), 0, 1}, cb);
          for (auto v : b.raw()) put<std::int32_t>(os, v);
        } else if constexpr (std::is_same_v<B, MapBBundle>) {
          const auto& cb = b.codebook();
          write_header(os, {Arch::mapb, Domain::sign, b.size(), cb ? cb->fingerprint() : 0, b.tie_seed(), b.depth()},
                       cb);
          for (auto w : pack_signs(b.vector().raw())) put<std::uint64_t>(os, w);
        } else if constexpr (std::is_same_v<B, BloomBundle>) {
          const auto& cb = b.codebook();
          write_header(os, {Arch::bloom, Domain::binary, cb.m(), cb.fingerprint(), 0, 1}, cb);
          for (auto w : b.words()) put<std::uint64_t>(os, w);
        } else if constexpr (std::is_same_v<B, CountBundle>) {
          const auto& cb = b.codebook();
          write_header(os, {Arch::cbloom, Domain::count, cb.m(), cb.fingerprint(), 0, 1}, cb);
          const auto counts = b.counts();
          const auto top = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
          const std::uint8_t width = top < 256 ? 1 : top < 65536 ? 2 : 4;
          put<std::uint8_t>(os, width);
          for (auto c : counts) {
            if (width == 1) put<std::uint8_t>(os, static_cast<std::uint8_t>(c));
            else if (width == 2) put<std::uint16_t>(os, static_cast<std::uint16_t>(c));
            else put<std::uint32_t>(os, static_cast<std::uint32_t>(c));
          }
        } else {
          const auto& cb = b.codebook();
          const auto m = cb.m();
          write_header(os, {Arch::hopfield, Domain::integer, m, cb.fingerprint(), b.d_seed(), 1}, cb);
          const auto raw = b.raw();
          for (std::uint64_t i = 0; i < m; ++i) {
            for (std::uint64_t j = i; j < m; ++j) put<std::int64_t>(os, raw[i * m + j]);
          }
        }
      },
      any);
  if (!os) throw IoError("write failed");
}

AnyBundle read_bundle(std::istream& is) {
  expect_magic(is, "VSAB");
  const auto arch_byte = get<std::uint8_t>(is);
  const auto domain_byte = get<std::uint8_t>(is);
  if (arch_byte > static_cast<std::uint8_t>(Arch::hopfield)) throw IoError("unknown architecture tag");
  const auto arch = static_cast<Arch>(arch_byte);
  const auto m = get<std::uint64_t>(is);
  const auto fingerprint = get<std::uint64_t>(is);
  const auto aux = get<std::uint64_t>(is);
  const auto depth = get<std::uint32_t>(is);
  const auto json_len = get<std::uint32_t>(is);
  if (json_len > kMaxJson) throw IoError("codebook JSON too long");
  std::string json(json_len, '\0');
  if (!is.read(json.data(), json_len)) throw IoError("truncated file");

  std::optional<Codebook> cb;
  if (json_len) {
    cb = guarded([&] { return Codebook::from_json(nlohmann::json::parse(json)); });
    if (cb->fingerprint() != fingerprint) throw IoError("codebook fingerprint mismatch");
    if (cb->m() != m) throw IoError("header m disagrees with the codebook");
  } else if (arch != Arch::mapb) {
    throw IoError("missing codebook");
  }
  if (m > (std::uint64_t{1} << 40)) throw IoError("implausible dimension");

  const auto expected_domain = [&] {
    switch (arch) {
      case Arch::mapi: return cb->scaled() ? Domain::scaled_real : Domain::integer;
      case Arch::mapb: return Domain::sign;
      case Arch::bloom: return Domain::binary;
      case Arch::cbloom: return Domain::count;
      default: return Domain::integer;
    }
  }();
  if (domain_byte != static_cast<std::uint8_t>(expected_domain)) throw IoError("domain tag does not match architecture");

  return guarded([&]() -> AnyBundle {
    switch (arch) {
      case Arch::mapi:
        return MapIBundle(*cb, get_n<std::int32_t>(is, m));
      case Arch::mapb: {
        const auto words = get_n<std::uint64_t>(is, (m + 63) / 64);
        std::vector<std::int32_t> x(m);
        for (std::uint64_t i = 0; i < m; ++i) x[i] = ((words[i >> 6] >> (i & 63)) & 1u) ? 1 : -1;
        return MapBBundle(Hypervector(Domain::sign, std::move(x)), cb, aux, depth);
      }
      case Arch::bloom:
        return BloomBundle(*cb, get_n<std::uint64_t>(is, (m + 63) / 64));
      case Arch::cbloom: {
        const auto width = get<std::uint8_t>(is);
        std::vector<std::int32_t> counts;
        counts.reserve(m);
        for (std::uint64_t i = 0; i < m; ++i) {
          if (width == 1) counts.push_back(get<std::uint8_t>(is));
          else if (width == 2) counts.push_back(get<std::uint16_t>(is));
          else if (width == 4) counts.push_back(static_cast<std::int32_t>(get<std::uint32_t>(is)));
          else throw IoError("bad count width");
        }
        return CountBundle(*cb, std::move(counts));
      }
      default: {
        std::vector<std::int64_t> raw(m * m);
        for (std::uint64_t i = 0; i < m; ++i) {
          for (std::uint64_t j = i; j < m; ++j) raw[i * m + j] = raw[j * m + i] = get<std::int64_t>(is);
        }
        return HpmBundle(*cb, aux, std::move(raw));
      }
    }
  });
}

void save_bundle(const std::filesystem::path& path, const AnyBundle& b) {
  auto os = open_out(path);
  write_bundle(os, b);
}

AnyBundle load_bundle(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_bundle(is);
}

void write_net(std::ostream& os, const HopfieldNet& net) {
  os.write("VSAH", 4);
  put<std::uint16_t>(os, kFormatVersion);
  put<std::uint64_t>(os, net.m());
  put<std::uint64_t>(os, net.n());
  for (std::uint64_t i = 0; i < net.m(); ++i) {
    for (std::uint64_t j = i + 1; j < net.m(); ++j) put<std::int32_t>(os, net.weight(i, j));
  }
  if (!os) throw IoError("write failed");
}

HopfieldNet read_net(std::istream& is) {
  expect_magic(is, "VSAH");
  const auto m = get<std::uint64_t>(is);
  const auto n = get<std::uint64_t>(is);
  if (m > (1u << 20)) throw IoError("implausible network size");
  std::vector<std::int32_t> w(m * m, 0);
  for (std::uint64_t i = 0; i < m; ++i) {
    for (std::uint64_t j = i + 1; j < m; ++j) w[i * m + j] = w[j * m + i] = get<std::int32_t>(is);
  }
  return guarded([&] { return HopfieldNet(m, n, std::move(w)); });
}

void save_net(const std::filesystem::path& path, const HopfieldNet& net) {
  auto os = open_out(path);
  write_net(os, net);
}

HopfieldNet load_net(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_net(is);
}

}  // namespace vsacap
