#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>

#include "hopbank/weights.hpp"

namespace hopbank {

// Bank file layout (all integers little-endian u32, weights little-endian
// IEEE-754 f64, row-major):
//
//   magic "HPBK" | version | rows | cols | k
//   k blocks of n*n weights
//   manifest count m, then m records of (id length, id bytes, network index)
//   CRC-32 of everything above
inline constexpr std::array<std::uint8_t, 4> kBankMagic{'H', 'P', 'B', 'K'};
inline constexpr std::uint32_t kBankFormatVersion = 1;

/// CRC-32 (IEEE reflected polynomial), incremental: feed `crc` from the
/// previous call, start from 0.
std::uint32_t crc32_update(std::uint32_t crc, std::span<const std::uint8_t> bytes);

/// Writes the bank bit-exactly; save followed by load reproduces every
/// weight byte and the full assignment map.
void save_bank(const NetworkBank& bank, const std::filesystem::path& path);

/// Throws FormatError on magic/version mismatch, ParseError on truncation
/// and CorruptionError on a CRC mismatch.
NetworkBank load_bank(const std::filesystem::path& path);

/// Exact on-disk size of a bank with the given shape and manifest ids.
std::uint64_t bank_file_size(std::uint32_t n, std::uint32_t k,
                             const std::map<std::string, std::uint32_t>& assignment);

}  // namespace hopbank
