#include <cctype>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <string>

#include "orbstream/image.hpp"

namespace orbstream {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  // Decimal field; nullopt on missing digits or overflow past 2^31.
  std::optional<std::int64_t> read_uint() {
    skip_whitespace_and_comments();
    std::int64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::int32_t>::max()) return std::nullopt;
      ++pos_;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void malformed(const std::string& what) {
  throw PgmError(PgmErrorCode::kMalformedHeader, "malformed PGM header: " + what);
}

}  // namespace

Image decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    malformed("missing P5 magic");
  }
  HeaderReader reader(bytes);
  reader.advance(2);

  const auto width = reader.read_uint();
  if (!width || *width == 0) malformed("bad width");
  const auto height = reader.read_uint();
  if (!height || *height == 0) malformed("bad height");
  const auto maxval = reader.read_uint();
  if (!maxval || *maxval == 0) malformed("bad maxval");
  if (*maxval > 255) {
    throw PgmError(PgmErrorCode::kMaxvalUnsupported,
                   "PGM maxval " + std::to_string(*maxval) +
                       " unsupported (8-bit only)");
  }
  // Exactly one whitespace byte separates maxval from the raster.
  if (reader.at_end() || !std::isspace(reader.peek())) {
    malformed("missing whitespace before raster");
  }
  reader.advance(1);

  const std::size_t count = static_cast<std::size_t>(*width) * *height;
  if (bytes.size() - reader.pos() < count) {
    throw PgmError(PgmErrorCode::kTruncatedData,
                   "PGM raster truncated: expected " + std::to_string(count) +
                       " bytes, found " +
                       std::to_string(bytes.size() - reader.pos()));
  }
  const auto raster = bytes.subspan(reader.pos(), count);
  return Image(static_cast<int>(*width), static_cast<int>(*height),
               std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

std::vector<std::uint8_t> encode_pgm(const Image& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return decode_pgm(bytes);
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const auto bytes = encode_pgm(image);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace orbstream
