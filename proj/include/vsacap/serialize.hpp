#pragma once

// Binary bundle and network files.
//
// Bundle layout (little endian):
//   "VSAB" | u16 version | u8 arch | u8 domain | u64 m | u64 codebook fingerprint
//   | u64 aux | u32 depth | u32 json length | codebook JSON | payload
// aux is the MAP-B tie seed or the Hopfield± diagonal seed, else 0. Payloads:
//   mapi: m x i32; mapb: m bits packed into u64 words (1 = +1); bloom: the
//   filter words; cbloom: u8 width (1, 2 or 4) then m counts of that width;
//   hopfield: upper triangle of the symmetric m x m matrix as i64.
// Networks: "VSAH" | u16 version | u64 m | u64 n | upper triangle (i < j) as i32.

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "vsacap/bloom.hpp"
#include "vsacap/cbloom.hpp"
#include "vsacap/harness.hpp"
#include "vsacap/hopfield.hpp"
#include "vsacap/mapb.hpp"
#include "vsacap/mapi.hpp"

namespace vsacap {

inline constexpr std::uint16_t kFormatVersion = 1;

using AnyBundle = std::variant<MapIBundle, MapBBundle, BloomBundle, CountBundle, HpmBundle>;

Arch arch_of(const AnyBundle& b);

// Malformed input throws IoError.
void write_bundle(std::ostream& os, const AnyBundle& b);
AnyBundle read_bundle(std::istream& is);
void save_bundle(const std::filesystem::path& path, const AnyBundle& b);
AnyBundle load_bundle(const std::filesystem::path& path);

void write_net(std::ostream& os, const HopfieldNet& net);
HopfieldNet read_net(std::istream& is);
void save_net(const std::filesystem::path& path, const HopfieldNet& net);
HopfieldNet load_net(const std::filesystem::path& path);

}  // namespace vsacap
