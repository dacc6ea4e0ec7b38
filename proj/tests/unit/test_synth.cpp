#include <doctest.h>

#include "hopbank/errors.hpp"
#include "hopbank/synth.hpp"

using namespace hopbank;

namespace {

// the 7x7 finder motif: dark border ring and dark 3x3 center
bool motif_dark(std::uint32_t r, std::uint32_t c) {
  if (r == 0 || r == 6 || c == 0 || c == 6) return true;
  return r >= 2 && r <= 4 && c >= 2 && c <= 4;
}

void check_motif(const BinaryImage& img, std::uint32_t row0, std::uint32_t col0) {
  for (std::uint32_t r = 0; r < 7; ++r) {
    for (std::uint32_t c = 0; c < 7; ++c) {
      CHECK(img.at(row0 + r, col0 + c) == (motif_dark(r, c) ? 1 : 0));
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("zero density gives a blank image") {
  const BinaryImage img = synth_pattern(9, 9, 0.0, false, 1);
  for (std::uint8_t p : img.pixels()) CHECK(p == 0);
}

TEST_CASE("density 0.5 balances over many samples") {
  double dark = 0.0, total = 0.0;
  for (int sample = 0; sample < 10000; ++sample) {
    const BinaryImage img = synth_pattern(57, 57, 0.5, false, sample);
    for (std::uint8_t p : img.pixels()) dark += p;
    total += img.size();
  }
  CHECK(std::abs(dark / total - 0.5) <= 0.02);
}

TEST_CASE("finder corners appear at the three corners") {
  const BinaryImage img = synth_pattern(21, 21, 0.5, true, 3);
  check_motif(img, 0, 0);
  check_motif(img, 0, 14);
  check_motif(img, 14, 0);
}

TEST_CASE("same seed, same pattern") {
  CHECK(synth_pattern(21, 21, 0.5, true, 4) == synth_pattern(21, 21, 0.5, true, 4));
  CHECK(synth_pattern(21, 21, 0.5, true, 4) != synth_pattern(21, 21, 0.5, true, 5));
}

TEST_CASE("bad density is rejected") {
  CHECK_THROWS_AS(synth_pattern(5, 5, -0.1, false, 1), ParameterError);
  CHECK_THROWS_AS(synth_pattern(5, 5, 1.1, false, 1), ParameterError);
}

TEST_SUITE_END();
