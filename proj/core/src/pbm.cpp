#include "hopbank/pbm.hpp"

#include <fstream>
#include <string>

#include "hopbank/errors.hpp"

namespace hopbank {

namespace {

// Cursor over the raw bytes; every error carries the offset it happened at.
class Scanner {
 public:
  explicit Scanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  bool eof() const { return pos_ >= bytes_.size(); }

  std::uint8_t peek() const {
    if (eof()) throw ParseError("unexpected end of file", pos_);
    return bytes_[pos_];
  }

  std::uint8_t take() {
    const std::uint8_t b = peek();
    ++pos_;
    return b;
  }

  // Whitespace and '#' comments are interchangeable separators in the
  // header and the P1 raster.
  void skip_separators() {
    while (!eof()) {
      const std::uint8_t b = bytes_[pos_];
      if (b == '#') {
        while (!eof() && bytes_[pos_] != '\n') ++pos_;
      } else if (b == ' ' || b == '\t' || b == '\r' || b == '\n' || b == '\v' || b == '\f') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::uint32_t read_dimension(const char* what) {
    skip_separators();
    if (eof()) throw ParseError(std::string("missing ") + what, pos_);
    if (peek() < '0' || peek() > '9') {
      throw ParseError(std::string("expected digit for ") + what, pos_);
    }
    std::uint64_t value = 0;
    while (!eof() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1u << 24) throw ParseError(std::string(what) + " is implausibly large", pos_);
      ++pos_;
    }
    if (value == 0) throw ParseError(std::string(what) + " must be positive", pos_);
    return static_cast<std::uint32_t>(value);
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
  void advance(std::size_t count) { pos_ += count; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

BinaryImage parse_pbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw FormatError("not a portable bitmap: missing P magic");
  }
  const char type = static_cast<char>(bytes[1]);
  if (type != '1' && type != '4') {
    throw FormatError(std::string("unsupported format P") + type + ", expected P1 or P4");
  }

  Scanner in(bytes);
  in.advance(2);
  const std::uint32_t cols = in.read_dimension("width");   // PBM order: width first
  const std::uint32_t rows = in.read_dimension("height");

  BinaryImage img(rows, cols);
  if (type == '1') {
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) {
        in.skip_separators();
        const std::size_t at = in.offset();
        if (in.eof()) throw ParseError("raster ends early", at);
        const std::uint8_t ch = in.take();
        if (ch != '0' && ch != '1') {
          throw ParseError("raster byte is not 0 or 1", at);
        }
        img.set(r, c, ch - '0');
      }
    }
  } else {
    // Exactly one separator byte between the header and the packed raster.
    if (in.eof()) throw ParseError("missing raster", in.offset());
    const std::uint8_t sep = in.take();
    if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n') {
      throw ParseError("expected single whitespace before raster", in.offset() - 1);
    }
    const std::size_t bytes_per_row = (cols + 7) / 8;
    std::span<const std::uint8_t> raster = in.rest();
    if (raster.size() < bytes_per_row * rows) {
      throw ParseError("raster truncated", in.offset() + raster.size());
    }
    for (std::uint32_t r = 0; r < rows; ++r) {
      const std::uint8_t* row = raster.data() + static_cast<std::size_t>(r) * bytes_per_row;
      for (std::uint32_t c = 0; c < cols; ++c) {
        img.set(r, c, (row[c / 8] >> (7 - c % 8)) & 1);
      }
    }
  }
  return img;
}

std::vector<std::uint8_t> encode_pbm(const BinaryImage& img, PbmFormat format) {
  std::vector<std::uint8_t> out;
  const std::string header = std::string(format == PbmFormat::P1 ? "P1" : "P4") + "\n" +
                             std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n";
  out.insert(out.end(), header.begin(), header.end());

  if (format == PbmFormat::P1) {
    for (std::uint32_t r = 0; r < img.rows(); ++r) {
      for (std::uint32_t c = 0; c < img.cols(); ++c) {
        out.push_back('0' + img.at(r, c));
        if ((c + 1) % 64 == 0 && c + 1 < img.cols()) out.push_back('\n');  // keep lines short
      }
      out.push_back('\n');
    }
  } else {
    const std::size_t bytes_per_row = (img.cols() + 7) / 8;
    for (std::uint32_t r = 0; r < img.rows(); ++r) {
      for (std::size_t b = 0; b < bytes_per_row; ++b) {
        std::uint8_t packed = 0;
        for (std::uint32_t bit = 0; bit < 8; ++bit) {
          const std::uint32_t c = static_cast<std::uint32_t>(b * 8 + bit);
          if (c < img.cols() && img.at(r, c)) packed |= 0x80u >> bit;
        }
        out.push_back(packed);
      }
    }
  }
  return out;
}

BinaryImage read_pbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return parse_pbm(bytes);
}

void write_pbm(const BinaryImage& img, const std::filesystem::path& path, PbmFormat format) {
  const std::vector<std::uint8_t> bytes = encode_pbm(img, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace hopbank
