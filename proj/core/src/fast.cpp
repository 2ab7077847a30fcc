#include "orbstream/fast.hpp"

namespace orbstream {

bool has_contiguous_arc(std::uint16_t mask) {
  // Duplicate the ring so wrapping runs become linear, then AND shifted
  // copies: bit i survives iff bits i..i+8 are all set.
  std::uint32_t run = mask | (static_cast<std::uint32_t>(mask) << 16);
  for (int i = 1; i < kFastArcLength; ++i) {
    run &= run >> 1;
  }
  return run != 0;
}

bool segment_test(int center, std::span<const std::uint8_t, 16> ring,
                  int threshold) {
  const int bright = center + threshold;
  const int dark = center - threshold;
  std::uint16_t bright_mask = 0;
  std::uint16_t dark_mask = 0;
  for (int i = 0; i < 16; ++i) {
    if (ring[i] > bright) bright_mask |= static_cast<std::uint16_t>(1u << i);
    if (ring[i] < dark) dark_mask |= static_cast<std::uint16_t>(1u << i);
  }
  return has_contiguous_arc(bright_mask) || has_contiguous_arc(dark_mask);
}

std::vector<Coordinate> detect_features(const Image& img, int threshold,
                                        int level) {
  std::vector<Coordinate> out;
  for (int y = kFeatureMargin; y < img.height() - kFeatureMargin; ++y) {
    for (int x = kFeatureMargin; x < img.width() - kFeatureMargin; ++x) {
      const auto sample = [&](int dx, int dy) { return img.at(x + dx, y + dy); };
      if (segment_test_at(sample, threshold)) {
        out.push_back({x, y, level});
      }
    }
  }
  return out;
}

}  // namespace orbstream
