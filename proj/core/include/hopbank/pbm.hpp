#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hopbank/image.hpp"

namespace hopbank {

enum class PbmFormat {
  P1,  // ASCII portable bitmap
  P4,  // packed binary portable bitmap
};

/// Parses P1/P4 bytes, comment lines included. PBM stores width before
/// height and 1 means black, which maps to pixel value 1 here. Throws
/// FormatError on an unsupported magic and ParseError (with byte offset)
/// on malformed content; a truncated payload never yields a partial image.
BinaryImage parse_pbm(std::span<const std::uint8_t> bytes);

/// Serializes deterministically: the same image always produces identical
/// bytes. P4 rows are padded to byte boundaries.
std::vector<std::uint8_t> encode_pbm(const BinaryImage& img, PbmFormat format);

BinaryImage read_pbm(const std::filesystem::path& path);
void write_pbm(const BinaryImage& img, const std::filesystem::path& path,
               PbmFormat format = PbmFormat::P4);

}  // namespace hopbank
