#pragma once

#include <cstdint>

#include "hopbank/image.hpp"

namespace hopbank {

/// Random binary pattern: i.i.d. Bernoulli(density) pixels. When
/// finder_corners is set and the image is at least 7x7, the three 7x7
/// concentric-ring finder motifs are stamped at the top-left, top-right
/// and bottom-left corners (last write wins if they overlap on very small
/// images), which keeps synthetic patterns visually close to real
/// matrix barcodes.
BinaryImage synth_pattern(std::uint32_t rows, std::uint32_t cols, double density,
                          bool finder_corners, std::uint64_t seed);

}  // namespace hopbank
