#pragma once

#include <cstdint>

#include "hopbank/image.hpp"

namespace hopbank {

/// Rectangle inside an image; rows == 0 or cols == 0 is a valid empty
/// region.
struct RectRegion {
  std::uint32_t row0 = 0;
  std::uint32_t col0 = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};

/// Additive per-pixel Gaussian noise on the {0,1} image, re-binarized at
/// `threshold`: output = 1 iff pixel + N(0, sigma2) >= threshold. With the
/// default 0.5 a dark pixel flips iff its draw is below -0.5 and a light
/// one iff its draw is at least +0.5.
BinaryImage gaussian_noise(const BinaryImage& img, double sigma2, std::uint64_t seed,
                           double threshold = 0.5);

/// Analytic flip fraction of gaussian_noise: 1 - Phi(0.5 / sqrt(sigma2)).
double expected_gaussian_flip_fraction(double sigma2);

/// imnoise-style salt & pepper: each pixel is selected with probability d
/// and, if selected, set to 1 or 0 with probability 1/2 each regardless of
/// its prior value. A selected pixel therefore flips with probability 1/2.
BinaryImage salt_pepper(const BinaryImage& img, double d, std::uint64_t seed);

/// salt_pepper restricted to `region`; everything outside is untouched.
BinaryImage region_salt_pepper(const BinaryImage& img, const RectRegion& region, double d,
                               std::uint64_t seed);

/// Forces every pixel in `region` to `value` (0 or 1). Deterministic.
BinaryImage region_fill(const BinaryImage& img, const RectRegion& region, std::uint8_t value);

/// The standard localized-corruption region: the top-left block scaled as
/// 35/57 of each dimension, about 37% of the pixels (35x35 = 1225 of a
/// 57x57 image).
RectRegion default_corner_region(std::uint32_t rows, std::uint32_t cols);

}  // namespace hopbank
