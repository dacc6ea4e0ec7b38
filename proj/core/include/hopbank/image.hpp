#pragma once

#include <cstdint>
#include <vector>

namespace hopbank {

/// rows x cols grid of {0,1} pixels, row-major. 1 is a dark module,
/// 0 a light one. Immutable value semantics; all pixels validated on
/// construction.
class BinaryImage {
 public:
  BinaryImage(std::uint32_t rows, std::uint32_t cols);  // zero-filled
  BinaryImage(std::uint32_t rows, std::uint32_t cols, std::vector<std::uint8_t> pixels);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t size() const { return pixels_.size(); }

  std::uint8_t at(std::uint32_t r, std::uint32_t c) const;
  void set(std::uint32_t r, std::uint32_t c, std::uint8_t value);

  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  bool operator==(const BinaryImage&) const = default;

 private:
  std::uint32_t rows_;
  std::uint32_t cols_;
  std::vector<std::uint8_t> pixels_;
};

/// Length-n vector over {+1,-1}; the state of one network. Entries are
/// validated on construction.
class BipolarState {
 public:
  explicit BipolarState(std::vector<std::int8_t> values);
  static BipolarState filled(std::size_t n, std::int8_t value);

  std::size_t size() const { return values_.size(); }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, std::int8_t value);

  const std::vector<std::int8_t>& values() const { return values_; }

  bool operator==(const BipolarState&) const = default;

 private:
  std::vector<std::int8_t> values_;
};

/// Row-major flattening: out[r*cols + c] == img(r, c).
std::vector<std::uint8_t> vectorize(const BinaryImage& img);

/// Inverse of vectorize. Throws DimensionError if v.size() != rows*cols.
BinaryImage devectorize(const std::vector<std::uint8_t>& v, std::uint32_t rows,
                        std::uint32_t cols);

/// s = 2v - 1, mapping {0,1} to {-1,+1}. Throws DomainError on a
/// non-binary entry.
BipolarState to_bipolar(const std::vector<std::uint8_t>& v);

/// v = (s + 1) / 2, mapping {-1,+1} back to {0,1}.
std::vector<std::uint8_t> to_binary(const BipolarState& s);

std::size_t hamming(const BinaryImage& a, const BinaryImage& b);
std::size_t hamming(const BipolarState& a, const BipolarState& b);

}  // namespace hopbank
