#include "hopbank/noise.hpp"

#include <cmath>
#include <string>

#include "hopbank/errors.hpp"
#include "hopbank/rng.hpp"

namespace hopbank {

namespace {

void check_region(const BinaryImage& img, const RectRegion& region) {
  if (static_cast<std::uint64_t>(region.row0) + region.rows > img.rows() ||
      static_cast<std::uint64_t>(region.col0) + region.cols > img.cols()) {
    throw ParameterError("region " + std::to_string(region.rows) + "x" +
                         std::to_string(region.cols) + "@(" + std::to_string(region.row0) + "," +
                         std::to_string(region.col0) + ") outside " + std::to_string(img.rows()) +
                         "x" + std::to_string(img.cols()));
  }
}

// Selected pixels are rewritten to 1 or 0 with equal probability,
// independent of their prior value.
void salt_pepper_in_place(BinaryImage& img, const RectRegion& region, double d, Rng& rng) {
  for (std::uint32_t r = region.row0; r < region.row0 + region.rows; ++r) {
    for (std::uint32_t c = region.col0; c < region.col0 + region.cols; ++c) {
      if (rng.uniform01() < d) {
        img.set(r, c, rng.uniform01() < 0.5 ? 1 : 0);
      }
    }
  }
}

}  // namespace

BinaryImage gaussian_noise(const BinaryImage& img, double sigma2, std::uint64_t seed,
                           double threshold) {
  if (!(sigma2 > 0.0)) throw ParameterError("variance must be positive");
  const double sigma = std::sqrt(sigma2);
  Rng rng(seed);
  BinaryImage out = img;
  for (std::uint32_t r = 0; r < img.rows(); ++r) {
    for (std::uint32_t c = 0; c < img.cols(); ++c) {
      const double noisy = static_cast<double>(img.at(r, c)) + rng.normal(sigma);
      out.set(r, c, noisy >= threshold ? 1 : 0);
    }
  }
  return out;
}

double expected_gaussian_flip_fraction(double sigma2) {
  if (!(sigma2 > 0.0)) throw ParameterError("variance must be positive");
  // 1 - Phi(x) = erfc(x / sqrt 2) / 2
  const double x = 0.5 / std::sqrt(sigma2);
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

BinaryImage salt_pepper(const BinaryImage& img, double d, std::uint64_t seed) {
  if (!(d >= 0.0 && d <= 1.0)) throw ParameterError("fraction must lie in [0, 1]");
  Rng rng(seed);
  BinaryImage out = img;
  salt_pepper_in_place(out, RectRegion{0, 0, img.rows(), img.cols()}, d, rng);
  return out;
}

BinaryImage region_salt_pepper(const BinaryImage& img, const RectRegion& region, double d,
                               std::uint64_t seed) {
  if (!(d >= 0.0 && d <= 1.0)) throw ParameterError("fraction must lie in [0, 1]");
  check_region(img, region);
  Rng rng(seed);
  BinaryImage out = img;
  salt_pepper_in_place(out, region, d, rng);
  return out;
}

BinaryImage region_fill(const BinaryImage& img, const RectRegion& region, std::uint8_t value) {
  if (value > 1) throw ParameterError("fill value must be 0 or 1");
  check_region(img, region);
  BinaryImage out = img;
  for (std::uint32_t r = region.row0; r < region.row0 + region.rows; ++r) {
    for (std::uint32_t c = region.col0; c < region.col0 + region.cols; ++c) {
      out.set(r, c, value);
    }
  }
  return out;
}

RectRegion default_corner_region(std::uint32_t rows, std::uint32_t cols) {
  const auto scaled = [](std::uint32_t extent) {
    const std::uint32_t s =
        static_cast<std::uint32_t>(std::llround(static_cast<double>(extent) * 35.0 / 57.0));
    return s == 0 ? 1u : (s > extent ? extent : s);
  };
  return RectRegion{0, 0, scaled(rows), scaled(cols)};
}

}  // namespace hopbank
