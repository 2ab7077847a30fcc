#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbstream/image.hpp"
#include "orbstream/types.hpp"

namespace orbstream {

/// Disc of radius 15: row dy spans dx in [-extent(dy), extent(dy)] with
/// extent(dy) = round(sqrt(r^2 - dy^2)).
class CircularMask {
 public:
  int radius() const { return radius_; }
  int extent(int dy) const { return extents_[dy + radius_]; }
  std::span<const int> row_extents() const { return extents_; }
  bool contains(int dx, int dy) const;
  /// Number of pixels inside the disc.
  int area() const;

 private:
  friend CircularMask circular_mask(int radius);
  int radius_ = 0;
  std::vector<int> extents_;
};

/// Only radius 15 is supported; anything else throws std::invalid_argument.
CircularMask circular_mask(int radius = kPatchRadius);

/// Intensity-centroid moments m10 = sum dx*I and m01 = sum dy*I.
struct Moments {
  std::int64_t m10 = 0;
  std::int64_t m01 = 0;
  friend bool operator==(const Moments&, const Moments&) = default;
};

/// Largest |m10| or |m01| the mask admits with 8-bit pixels. Row extents
/// are rounded per row, so the horizontal extreme is the larger one.
std::int64_t max_moment(const CircularMask& mask);

template <typename Sampler>
Moments accumulate_moments(Sampler&& sample, const CircularMask& mask) {
  Moments m;
  const int r = mask.radius();
  for (int dy = -r; dy <= r; ++dy) {
    const int e = mask.extent(dy);
    std::int64_t row_sum = 0;
    for (int dx = -e; dx <= e; ++dx) {
      const std::int64_t v = sample(dx, dy);
      m.m10 += dx * v;
      row_sum += v;
    }
    m.m01 += dy * row_sum;
  }
  return m;
}

/// Throws std::out_of_range when the patch would leave the image.
Moments compute_moments(const Image& img, Coordinate center,
                        const CircularMask& mask);

/// Magnitude width of the untruncated moments (sign excluded).
inline constexpr int kMomentMagnitudeBits = 20;
inline constexpr int kDefaultWordLength = 8;

/// Sign/magnitude moments after shared-leading-zero truncation to
/// `wordlen` magnitude bits (wordlen + 1 bits per moment).
struct TruncatedMoments {
  bool negative10 = false;
  bool negative01 = false;
  std::uint32_t mag10 = 0;
  std::uint32_t mag01 = 0;
  int wordlen = kDefaultWordLength;

  std::int64_t m10() const { return negative10 ? -std::int64_t{mag10} : mag10; }
  std::int64_t m01() const { return negative01 ? -std::int64_t{mag01} : mag01; }
  friend bool operator==(const TruncatedMoments&,
                         const TruncatedMoments&) = default;
};

/// Drops the leading zero bits common to |m10| and |m01| (in 20-bit form),
/// then keeps the top `wordlen` bits of each magnitude.
/// Throws std::invalid_argument unless 1 <= wordlen <= 20, and
/// std::out_of_range if a magnitude does not fit in 20 bits.
TruncatedMoments truncate_moments(Moments m, int wordlen);

struct Orientation {
  double sin = 0.0;
  double cos = 1.0;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// sin = m01 / |m|, cos = m10 / |m|; zero moments give (0, 1).
Orientation compute_sincos(Moments m);
Orientation compute_sincos(const TruncatedMoments& t);

/// Full-precision orientation when `wordlen` is empty.
Orientation orient(Moments m, std::optional<int> wordlen);

struct RotatedPoint {
  double x = 0.0;
  double y = 0.0;
};

/// x' = x cos + y sin, y' = y cos - x sin.
RotatedPoint rotate_point(Offset p, Orientation o);

/// rotate_point rounded half away from zero and clamped to the patch.
Offset rotate_to_grid(Offset p, Orientation o);

/// Distance between the unrounded rotations of p under both orientations.
double rotation_error(Offset p, Orientation full, Orientation truncated);

// ---------------------------------------------------------------------------
// Word-length sweep

/// Moment pairs evaluated by the sweep. The grid places magnitudes
/// 2^(i / grid_steps_per_octave) for i up to the 20-bit limit at
/// grid_angles evenly spaced angles; random_pairs uniform pairs in
/// [-(2^20 - 1), 2^20 - 1] are appended from a seeded mt19937_64.
struct SweepSampleSpec {
  int grid_steps_per_octave = 4;
  int grid_angles = 360;
  int random_pairs = 4096;
  std::uint64_t seed = 2017;
  std::vector<Moments> extra;
};

std::vector<Moments> enumerate_sweep_samples(const SweepSampleSpec& spec);

struct SweepRow {
  int wordlen = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
  Offset argmax;
};

/// For each word length: max and mean rotation_error over every sample and
/// every offset of the 31x31 patch. Ties on the maximum go to the offset
/// farthest from the centre, then to the first in raster order.
/// Throws std::invalid_argument on an empty word-length list, an empty
/// sample set or a word length outside 1..20.
std::vector<SweepRow> wordlength_sweep(std::span<const int> wordlens,
                                       std::span<const Moments> samples);
std::vector<SweepRow> wordlength_sweep(std::span<const int> wordlens,
                                       const SweepSampleSpec& spec = {});

/// "N,max_error,mean_error,argmax_dx,argmax_dy" with 6 decimals.
std::string format_sweep_csv(std::span<const SweepRow> rows);

}  // namespace orbstream
