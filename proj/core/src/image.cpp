#include "orbstream/image.hpp"

#include <cstdint>
#include <string>

namespace orbstream {

Image::Image(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("image dimensions must be non-negative");
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 0 || height < 0 ||
      data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("image data length does not match " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

Image resize_bilinear(const Image& src, int dst_width, int dst_height) {
  if (dst_width < 2 || dst_height < 2) {
    throw std::invalid_argument("resize target must be at least 2x2");
  }
  if (dst_width > src.width() || dst_height > src.height()) {
    throw std::invalid_argument("resize_bilinear does not upscale");
  }

  // Source position of destination index d is d * span / denom, kept as an
  // integer part plus remainder so the weights stay exact.
  const std::int64_t span_x = src.width() - 1;
  const std::int64_t span_y = src.height() - 1;
  const std::int64_t denom_x = dst_width - 1;
  const std::int64_t denom_y = dst_height - 1;
  const std::int64_t denom = denom_x * denom_y;

  std::vector<int> x0(dst_width);
  std::vector<std::int64_t> rx(dst_width);
  for (int x = 0; x < dst_width; ++x) {
    const std::int64_t pos = x * span_x;
    x0[x] = static_cast<int>(pos / denom_x);
    rx[x] = pos % denom_x;
  }

  Image dst(dst_width, dst_height);
  for (int y = 0; y < dst_height; ++y) {
    const std::int64_t pos_y = y * span_y;
    const int y0 = static_cast<int>(pos_y / denom_y);
    const std::int64_t ry = pos_y % denom_y;
    const int y1 = ry == 0 ? y0 : y0 + 1;
    for (int x = 0; x < dst_width; ++x) {
      const int x1 = rx[x] == 0 ? x0[x] : x0[x] + 1;
      const std::int64_t wx1 = rx[x];
      const std::int64_t wx0 = denom_x - wx1;
      const std::int64_t top = wx0 * src.at(x0[x], y0) + wx1 * src.at(x1, y0);
      const std::int64_t bottom =
          wx0 * src.at(x0[x], y1) + wx1 * src.at(x1, y1);
      const std::int64_t num = (denom_y - ry) * top + ry * bottom;
      // num >= 0, so half-up equals half-away-from-zero.
      dst.at(x, y) = static_cast<std::uint8_t>((2 * num + denom) / (2 * denom));
    }
  }
  return dst;
}

std::pair<int, int> pyramid_level1_dims(int width, int height) {
  return {static_cast<int>((static_cast<std::int64_t>(width) * 5) / 6),
          static_cast<int>((static_cast<std::int64_t>(height) * 5) / 6)};
}

Pyramid build_pyramid(Image src) {
  const auto [w1, h1] = pyramid_level1_dims(src.width(), src.height());
  if (w1 < 2 || h1 < 2) {
    throw std::invalid_argument("image too small for a 2-level pyramid");
  }
  Pyramid pyramid;
  pyramid.levels[1] = resize_bilinear(src, w1, h1);
  pyramid.levels[0] = std::move(src);
  return pyramid;
}

}  // namespace orbstream
