#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbstream {

/// Smallest side length accepted by detection: a 31x31 patch plus the
/// 7x7 smoothing apron on both sides.
inline constexpr int kMinDetectSize = 38;

/// Row-major 8-bit grayscale image.
class Image {
 public:
  Image() = default;
  Image(int width, int height, std::uint8_t fill = 0);
  /// Throws std::invalid_argument if data.size() != width * height.
  Image(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint8_t> pixels() const { return data_; }
  std::span<std::uint8_t> pixels() { return data_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(data_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// ---------------------------------------------------------------------------
// PGM (binary P5) codec

enum class PgmErrorCode {
  kMalformedHeader,
  kMaxvalUnsupported,
  kTruncatedData,
};

class PgmError : public std::runtime_error {
 public:
  PgmError(PgmErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  PgmErrorCode code() const { return code_; }

 private:
  PgmErrorCode code_;
};

/// Raised when a file cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Image decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const Image& image);

Image read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Image& image);

// ---------------------------------------------------------------------------
// Resizing and the 2-level pyramid

/// Endpoint-aligned bilinear downscale. Source coordinate of destination
/// column x is x * (src_width - 1) / (dst_width - 1); the blend is evaluated
/// in exact integer arithmetic and rounded half away from zero.
///
/// Throws std::invalid_argument when a destination side is < 2 or larger
/// than the corresponding source side.
Image resize_bilinear(const Image& src, int dst_width, int dst_height);

/// Level-1 scale: 640x480 maps to 533x400 under floor(side / 1.2).
inline constexpr double kPyramidScale = 1.2;

/// floor(width / 1.2), floor(height / 1.2), computed as floor(5 * side / 6).
std::pair<int, int> pyramid_level1_dims(int width, int height);

struct Pyramid {
  std::array<Image, 2> levels;
  double scale = kPyramidScale;
};

/// Throws std::invalid_argument when the source is too small for a level 1
/// of at least 2x2.
Pyramid build_pyramid(Image src);

}  // namespace orbstream
