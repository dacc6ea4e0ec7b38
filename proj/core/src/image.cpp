#include "hopbank/image.hpp"

#include <string>

#include "hopbank/errors.hpp"

namespace hopbank {

namespace {

void check_geometry(std::uint32_t rows, std::uint32_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("image geometry must be positive, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

}  // namespace

BinaryImage::BinaryImage(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols) {
  check_geometry(rows, cols);
  pixels_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

BinaryImage::BinaryImage(std::uint32_t rows, std::uint32_t cols, std::vector<std::uint8_t> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  check_geometry(rows, cols);
  if (pixels_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (std::size_t i = 0; i < pixels_.size(); ++i) {
    if (pixels_[i] > 1) {
      throw DomainError("pixel " + std::to_string(i) + " is " + std::to_string(pixels_[i]) +
                        ", expected 0 or 1");
    }
  }
}

std::uint8_t BinaryImage::at(std::uint32_t r, std::uint32_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw DimensionError("pixel (" + std::to_string(r) + "," + std::to_string(c) +
                         ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return pixels_[static_cast<std::size_t>(r) * cols_ + c];
}

void BinaryImage::set(std::uint32_t r, std::uint32_t c, std::uint8_t value) {
  if (r >= rows_ || c >= cols_) {
    throw DimensionError("pixel (" + std::to_string(r) + "," + std::to_string(c) +
                         ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (value > 1) {
    throw DomainError("pixel value " + std::to_string(value) + ", expected 0 or 1");
  }
  pixels_[static_cast<std::size_t>(r) * cols_ + c] = value;
}

BipolarState::BipolarState(std::vector<std::int8_t> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 1 && values_[i] != -1) {
      throw DomainError("state entry " + std::to_string(i) + " is " +
                        std::to_string(values_[i]) + ", expected +1 or -1");
    }
  }
}

BipolarState BipolarState::filled(std::size_t n, std::int8_t value) {
  return BipolarState(std::vector<std::int8_t>(n, value));
}

void BipolarState::set(std::size_t i, std::int8_t value) {
  if (value != 1 && value != -1) {
    throw DomainError("state value " + std::to_string(value) + ", expected +1 or -1");
  }
  values_[i] = value;
}

std::vector<std::uint8_t> vectorize(const BinaryImage& img) {
  return img.pixels();  // already row-major
}

BinaryImage devectorize(const std::vector<std::uint8_t>& v, std::uint32_t rows,
                        std::uint32_t cols) {
  if (v.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("vector length " + std::to_string(v.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  return BinaryImage(rows, cols, v);
}

BipolarState to_bipolar(const std::vector<std::uint8_t>& v) {
  std::vector<std::int8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 1) {
      throw DomainError("entry " + std::to_string(i) + " is " + std::to_string(v[i]) +
                        ", expected 0 or 1");
    }
    out[i] = static_cast<std::int8_t>(2 * v[i] - 1);
  }
  return BipolarState(std::move(out));
}

std::vector<std::uint8_t> to_binary(const BipolarState& s) {
  std::vector<std::uint8_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((s[i] + 1) / 2);
  }
  return out;
}

std::size_t hamming(const BinaryImage& a, const BinaryImage& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hamming over mismatched geometries");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) {
    d += a.pixels()[i] != b.pixels()[i];
  }
  return d;
}

std::size_t hamming(const BipolarState& a, const BipolarState& b) {
  if (a.size() != b.size()) {
    throw DimensionError("hamming over mismatched state lengths");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] != b[i];
  }
  return d;
}

}  // namespace hopbank
