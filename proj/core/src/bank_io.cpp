#include "hopbank/bank_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hopbank/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "bank files are little-endian; add byte swapping for this platform");
static_assert(sizeof(double) == 8);

namespace hopbank {

namespace {

const std::array<std::uint32_t, 256>& crc_table() {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int bit = 0; bit < 8; ++bit) {
        c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      }
      t[i] = c;
    }
    return t;
  }();
  return table;
}

// Streams bytes to the file while folding them into the running CRC.
class ChecksumWriter {
 public:
  explicit ChecksumWriter(const std::filesystem::path& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
  }

  void write(std::span<const std::uint8_t> bytes) {
    crc_ = crc32_update(crc_, bytes);
    out_.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!out_) throw IoError("write failed for '" + path_.string() + "'");
  }

  void write_u32(std::uint32_t value) {
    std::uint8_t buf[4];
    std::memcpy(buf, &value, 4);
    write(buf);
  }

  // Appends the CRC itself (not folded into the checksum).
  void finish() {
    std::uint8_t buf[4];
    std::memcpy(buf, &crc_, 4);
    out_.write(reinterpret_cast<const char*>(buf), 4);
    if (!out_) throw IoError("write failed for '" + path_.string() + "'");
    out_.close();
    if (!out_) throw IoError("close failed for '" + path_.string() + "'");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::uint32_t crc_ = 0;
};

class ChecksumReader {
 public:
  ChecksumReader(const std::filesystem::path& path, std::uint64_t payload_size)
      : path_(path), in_(path, std::ios::binary), remaining_(payload_size) {
    if (!in_) throw IoError("cannot open '" + path.string() + "' for reading");
  }

  void read(std::span<std::uint8_t> into) {
    if (into.size() > remaining_) {
      throw ParseError("bank file truncated in '" + path_.string() + "'");
    }
    in_.read(reinterpret_cast<char*>(into.data()), static_cast<std::streamsize>(into.size()));
    if (in_.gcount() != static_cast<std::streamsize>(into.size())) {
      throw ParseError("bank file truncated in '" + path_.string() + "'");
    }
    remaining_ -= into.size();
    crc_ = crc32_update(crc_, into);
  }

  std::uint32_t read_u32() {
    std::uint8_t buf[4];
    read(buf);
    std::uint32_t value;
    std::memcpy(&value, buf, 4);
    return value;
  }

  std::uint64_t remaining() const { return remaining_; }

  // Reads the trailing checksum and compares it with the running value.
  void verify() {
    if (remaining_ != 0) {
      throw ParseError("bank payload has " + std::to_string(remaining_) + " unread bytes");
    }
    std::uint8_t buf[4];
    in_.read(reinterpret_cast<char*>(buf), 4);
    if (in_.gcount() != 4) throw ParseError("bank file missing checksum");
    std::uint32_t stored;
    std::memcpy(&stored, buf, 4);
    if (stored != crc_) {
      throw CorruptionError("bank checksum mismatch in '" + path_.string() + "'");
    }
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::uint64_t remaining_;
  std::uint32_t crc_ = 0;
};

}  // namespace

std::uint32_t crc32_update(std::uint32_t crc, std::span<const std::uint8_t> bytes) {
  const auto& table = crc_table();
  std::uint32_t c = crc ^ 0xffffffffu;
  for (std::uint8_t b : bytes) {
    c = table[(c ^ b) & 0xffu] ^ (c >> 8);
  }
  return c ^ 0xffffffffu;
}

std::uint64_t bank_file_size(std::uint32_t n, std::uint32_t k,
                             const std::map<std::string, std::uint32_t>& assignment) {
  std::uint64_t size = 4 + 4 + 4 + 4 + 4;  // magic, version, rows, cols, k
  size += static_cast<std::uint64_t>(k) * n * n * sizeof(double);
  size += 4;  // manifest count
  for (const auto& [id, index] : assignment) {
    size += 4 + id.size() + 4;
  }
  size += 4;  // crc
  return size;
}

void save_bank(const NetworkBank& bank, const std::filesystem::path& path) {
  ChecksumWriter out(path);
  out.write(kBankMagic);
  out.write_u32(kBankFormatVersion);
  out.write_u32(bank.geometry().rows);
  out.write_u32(bank.geometry().cols);
  out.write_u32(bank.k());

  for (const WeightMatrix& w : bank.networks()) {
    out.write(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(w.data().data()),
        w.data().size() * sizeof(double)));
  }

  out.write_u32(static_cast<std::uint32_t>(bank.assignment().size()));
  for (const auto& [id, index] : bank.assignment()) {
    out.write_u32(static_cast<std::uint32_t>(id.size()));
    out.write(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(id.data()),
                                            id.size()));
    out.write_u32(index);
  }
  out.finish();
}

NetworkBank load_bank(const std::filesystem::path& path) {
  std::error_code ec;
  const std::uint64_t file_size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat '" + path.string() + "': " + ec.message());
  if (file_size < 24) throw ParseError("bank file too short: " + std::to_string(file_size));

  ChecksumReader in(path, file_size - 4);  // payload excludes the trailing CRC

  std::array<std::uint8_t, 4> magic;
  in.read(magic);
  if (magic != kBankMagic) throw FormatError("bad magic in '" + path.string() + "'");
  const std::uint32_t version = in.read_u32();
  if (version != kBankFormatVersion) {
    throw FormatError("unsupported bank version " + std::to_string(version));
  }
  const std::uint32_t rows = in.read_u32();
  const std::uint32_t cols = in.read_u32();
  const std::uint32_t k = in.read_u32();
  if (rows == 0 || cols == 0) throw ParseError("bank geometry is zero");
  if (k > 65536) throw ParseError("bank network count implausibly large");
  const std::uint64_t n = static_cast<std::uint64_t>(rows) * cols;
  if (n > (1u << 20)) throw ParseError("bank geometry implausibly large");

  const std::uint64_t weight_bytes = k * n * n * sizeof(double);
  if (weight_bytes + 28 > file_size) {
    throw ParseError("bank file truncated: " + std::to_string(file_size) + " bytes for k = " +
                     std::to_string(k) + ", n = " + std::to_string(n));
  }

  std::vector<std::vector<double>> raw_weights;
  raw_weights.reserve(k);
  for (std::uint32_t net = 0; net < k; ++net) {
    std::vector<double> w(n * n);
    in.read(std::span<std::uint8_t>(reinterpret_cast<std::uint8_t*>(w.data()),
                                    w.size() * sizeof(double)));
    raw_weights.push_back(std::move(w));
  }

  const std::uint32_t manifest_count = in.read_u32();
  std::map<std::string, std::uint32_t> assignment;
  for (std::uint32_t rec = 0; rec < manifest_count; ++rec) {
    const std::uint32_t id_length = in.read_u32();
    if (id_length > in.remaining()) throw ParseError("manifest id overruns file");
    std::string id(id_length, '\0');
    in.read(std::span<std::uint8_t>(reinterpret_cast<std::uint8_t*>(id.data()), id.size()));
    const std::uint32_t index = in.read_u32();
    assignment[std::move(id)] = index;
  }

  // Checksum first: a damaged file must surface as corruption, not as an
  // invariant failure inside WeightMatrix construction.
  in.verify();

  std::vector<WeightMatrix> networks;
  networks.reserve(k);
  for (std::vector<double>& w : raw_weights) {
    networks.emplace_back(static_cast<std::uint32_t>(n), std::move(w));
  }
  return NetworkBank(BankGeometry{rows, cols}, std::move(networks), std::move(assignment));
}

}  // namespace hopbank
