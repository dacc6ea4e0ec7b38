#include "hopbank/synth.hpp"

#include "hopbank/errors.hpp"
#include "hopbank/rng.hpp"

namespace hopbank {

namespace {

// 7x7 finder motif: solid outer ring, light ring, solid 3x3 center.
bool finder_dark(std::uint32_t r, std::uint32_t c) {
  if (r == 0 || r == 6 || c == 0 || c == 6) return true;
  return r >= 2 && r <= 4 && c >= 2 && c <= 4;
}

void stamp_finder(BinaryImage& img, std::uint32_t row0, std::uint32_t col0) {
  for (std::uint32_t r = 0; r < 7; ++r) {
    for (std::uint32_t c = 0; c < 7; ++c) {
      img.set(row0 + r, col0 + c, finder_dark(r, c) ? 1 : 0);
    }
  }
}

}  // namespace

BinaryImage synth_pattern(std::uint32_t rows, std::uint32_t cols, double density,
                          bool finder_corners, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw ParameterError("density must lie in [0, 1]");
  }
  Rng rng(seed);
  BinaryImage img(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      img.set(r, c, rng.uniform01() < density ? 1 : 0);
    }
  }
  if (finder_corners && rows >= 7 && cols >= 7) {
    stamp_finder(img, 0, 0);
    stamp_finder(img, 0, cols - 7);
    stamp_finder(img, rows - 7, 0);
  }
  return img;
}

}  // namespace hopbank
