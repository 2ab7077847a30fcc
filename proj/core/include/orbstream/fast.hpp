#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "orbstream/image.hpp"
#include "orbstream/types.hpp"

namespace orbstream {

inline constexpr int kFastArcLength = 9;
inline constexpr int kDefaultFastThreshold = 20;

/// Bresenham circle of radius 3, clockwise (y down) from the top pixel.
inline constexpr std::array<Offset, 16> kFastRing = {{
    {0, -3}, {1, -3}, {2, -2}, {3, -1},
    {3, 0},  {3, 1},  {2, 2},  {1, 3},
    {0, 3},  {-1, 3}, {-2, 2}, {-3, 1},
    {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3},
}};

/// True if the 16-bit ring mask holds a circular run of at least
/// kFastArcLength set bits. Bit i corresponds to kFastRing[i].
bool has_contiguous_arc(std::uint16_t mask);

/// FAST-9 segment test: some contiguous arc of >= 9 ring pixels is entirely
/// brighter than center + threshold or entirely darker than
/// center - threshold (strict comparisons, arcs wrap around).
bool segment_test(int center, std::span<const std::uint8_t, 16> ring,
                  int threshold);

/// Segment test at (x, y), reading the ring through `sample(dx, dy)`.
/// Shared by the batch detector and the streaming register bank.
template <typename Sampler>
bool segment_test_at(Sampler&& sample, int threshold) {
  std::array<std::uint8_t, 16> ring;
  for (std::size_t i = 0; i < kFastRing.size(); ++i) {
    ring[i] = sample(kFastRing[i].dx, kFastRing[i].dy);
  }
  return segment_test(sample(0, 0), ring, threshold);
}

/// Margin predicate for feature locations.
inline bool in_feature_margin(int x, int y, int width, int height) {
  return x >= kFeatureMargin && x < width - kFeatureMargin &&
         y >= kFeatureMargin && y < height - kFeatureMargin;
}

/// Every in-margin pixel that passes the segment test, in raster order.
/// No non-maximum suppression is applied.
std::vector<Coordinate> detect_features(const Image& img, int threshold,
                                        int level = 0);

}  // namespace orbstream
