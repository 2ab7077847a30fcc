#pragma once

#include <compare>

namespace orbstream {

/// Integer offset relative to a feature point.
struct Offset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// Feature location on a pyramid level. Ordering is (level, y, x), i.e.
/// raster order within a level.
struct Coordinate {
  int x = 0;
  int y = 0;
  int level = 0;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
  friend auto operator<=>(const Coordinate& a, const Coordinate& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

/// Patch radius shared by orientation moments and descriptor sampling.
inline constexpr int kPatchRadius = 15;
/// Patch side (31).
inline constexpr int kPatchSize = 2 * kPatchRadius + 1;
/// Half-width of the 7x7 smoothing kernel.
inline constexpr int kSmoothRadius = 3;
/// Features keep this distance from every image border so the smoothed
/// 31x31 patch around them is computed without border replication.
inline constexpr int kFeatureMargin = kPatchRadius + kSmoothRadius;

}  // namespace orbstream
