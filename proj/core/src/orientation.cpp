#include "orbstream/orientation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace orbstream {

bool CircularMask::contains(int dx, int dy) const {
  if (dy < -radius_ || dy > radius_) return false;
  return std::abs(dx) <= extent(dy);
}

int CircularMask::area() const {
  int n = 0;
  for (int e : extents_) n += 2 * e + 1;
  return n;
}

CircularMask circular_mask(int radius) {
  if (radius != kPatchRadius) {
    throw std::invalid_argument("unsupported mask radius " +
                                std::to_string(radius) + " (only 15)");
  }
  CircularMask mask;
  mask.radius_ = radius;
  mask.extents_.resize(2 * radius + 1);
  for (int dy = -radius; dy <= radius; ++dy) {
    mask.extents_[dy + radius] = static_cast<int>(
        std::lround(std::sqrt(static_cast<double>(radius * radius - dy * dy))));
  }
  return mask;
}

std::int64_t max_moment(const CircularMask& mask) {
  std::int64_t positive_dx = 0;
  for (int e : mask.row_extents()) positive_dx += std::int64_t{e} * (e + 1) / 2;
  std::int64_t positive_dy = 0;
  for (int dy = 1; dy <= mask.radius(); ++dy) positive_dy += std::int64_t{dy} * (2 * mask.extent(dy) + 1);
  return 255 * std::max(positive_dx, positive_dy);
}

Moments compute_moments(const Image& img, Coordinate center,
                        const CircularMask& mask) {
  const int r = mask.radius();
  if (center.x < r || center.y < r || center.x >= img.width() - r ||
      center.y >= img.height() - r) {
    throw std::out_of_range("moment patch leaves the image at (" +
                            std::to_string(center.x) + ", " +
                            std::to_string(center.y) + ")");
  }
  return accumulate_moments(
      [&](int dx, int dy) { return img.at(center.x + dx, center.y + dy); },
      mask);
}

TruncatedMoments truncate_moments(Moments m, int wordlen) {
  if (wordlen < 1 || wordlen > kMomentMagnitudeBits) {
    throw std::invalid_argument("word length must be in 1..20, got " +
                                std::to_string(wordlen));
  }
  constexpr std::uint32_t kLimit = 1u << kMomentMagnitudeBits;
  const std::uint64_t a10 = static_cast<std::uint64_t>(std::llabs(m.m10));
  const std::uint64_t a01 = static_cast<std::uint64_t>(std::llabs(m.m01));
  if (a10 >= kLimit || a01 >= kLimit) {
    throw std::out_of_range("moment magnitude exceeds 20 bits");
  }

  const auto mag10 = static_cast<std::uint32_t>(a10);
  const auto mag01 = static_cast<std::uint32_t>(a01);
  // Leading zeros shared by both magnitudes, counted in 20-bit form.
  const int shared_zeros =
      kMomentMagnitudeBits - std::bit_width(mag10 | mag01);
  const int drop = kMomentMagnitudeBits - wordlen;

  TruncatedMoments t;
  t.negative10 = m.m10 < 0;
  t.negative01 = m.m01 < 0;
  t.mag10 = (mag10 << shared_zeros) >> drop;
  t.mag01 = (mag01 << shared_zeros) >> drop;
  t.wordlen = wordlen;
  return t;
}

namespace {

Orientation sincos_from(double m10, double m01) {
  if (m10 == 0.0 && m01 == 0.0) return {};
  const double norm = std::sqrt(m10 * m10 + m01 * m01);
  return {m01 / norm, m10 / norm};
}

}  // namespace

Orientation compute_sincos(Moments m) {
  return sincos_from(static_cast<double>(m.m10), static_cast<double>(m.m01));
}

Orientation compute_sincos(const TruncatedMoments& t) {
  return sincos_from(static_cast<double>(t.m10()), static_cast<double>(t.m01()));
}

Orientation orient(Moments m, std::optional<int> wordlen) {
  if (!wordlen) return compute_sincos(m);
  return compute_sincos(truncate_moments(m, *wordlen));
}

RotatedPoint rotate_point(Offset p, Orientation o) {
  return {p.dx * o.cos + p.dy * o.sin, p.dy * o.cos - p.dx * o.sin};
}

Offset rotate_to_grid(Offset p, Orientation o) {
  const RotatedPoint r = rotate_point(p, o);
  const auto snap = [](double v) {
    return std::clamp(static_cast<int>(std::lround(v)), -kPatchRadius,
                      kPatchRadius);
  };
  return {snap(r.x), snap(r.y)};
}

double rotation_error(Offset p, Orientation full, Orientation truncated) {
  const RotatedPoint a = rotate_point(p, full);
  const RotatedPoint b = rotate_point(p, truncated);
  const double ex = a.x - b.x;
  const double ey = a.y - b.y;
  return std::sqrt(ex * ex + ey * ey);
}

}  // namespace orbstream
