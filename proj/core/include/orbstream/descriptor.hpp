#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbstream/image.hpp"
#include "orbstream/orientation.hpp"
#include "orbstream/types.hpp"

namespace orbstream {

// ---------------------------------------------------------------------------
// 7x7 smoothing

/// Separable integer kernel: 2-D weight (i, j) = taps[i] * taps[j], the taps
/// being a rounded sampled Gaussian (sigma 2) normalised to 64, so the 2-D
/// divisor is 4096.
struct GaussianKernel {
  static constexpr int kSize = 7;
  static constexpr std::array<int, kSize> taps = {5, 8, 12, 14, 12, 8, 5};
  static constexpr int divisor = 4096;
  static constexpr int shift = 12;

  static constexpr int weight(int i, int j) { return taps[i] * taps[j]; }
};

/// Rounded kernel response over a 7x7 neighbourhood read via
/// `sample(dx, dy)` with dx, dy in [-3, 3].
template <typename Sampler>
std::uint8_t gaussian_response(Sampler&& sample) {
  constexpr int r = GaussianKernel::kSize / 2;
  std::int32_t acc = 0;
  for (int dy = -r; dy <= r; ++dy) {
    std::int32_t row = 0;
    for (int dx = -r; dx <= r; ++dx) {
      row += GaussianKernel::taps[dx + r] * sample(dx, dy);
    }
    acc += GaussianKernel::taps[dy + r] * row;
  }
  return static_cast<std::uint8_t>((acc + GaussianKernel::divisor / 2) >>
                                   GaussianKernel::shift);
}

/// 7x7 smoothing with replicated borders.
Image gaussian_smooth(const Image& img);

// ---------------------------------------------------------------------------
// Steered BRIEF

inline constexpr int kDefaultPairs = 256;
inline constexpr std::uint64_t kDefaultPatternSeed = 0x0F5A0B2017ULL;
/// Pattern offsets stay inside this disc, so any rotation keeps them in the
/// 31x31 patch.
inline constexpr int kPatternRadius = 13;
inline constexpr double kPatternSigma = kPatternRadius / 2.0;

struct PatternPair {
  Offset a;
  Offset b;
  friend bool operator==(const PatternPair&, const PatternPair&) = default;
};

/// Gaussian offset source behind generate_pattern: mt19937_64 words mapped
/// to (0, 1] doubles, Box-Muller pairs scaled by kPatternSigma, rounded half
/// away from zero. Exposed so the raw distribution can be inspected.
class GaussianOffsetSampler {
 public:
  explicit GaussianOffsetSampler(std::uint64_t seed);
  /// Unconstrained draw.
  Offset draw();
  /// Draw rejected until it lies in the radius-13 disc.
  Offset draw_in_disc();

 private:
  double uniform();

  std::mt19937_64 rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Deterministic sampling pattern of `pairs` point pairs. Pairs with a == b
/// are redrawn. Throws std::invalid_argument when pairs < 1.
std::vector<PatternPair> generate_pattern(int pairs = kDefaultPairs,
                                          std::uint64_t seed = kDefaultPatternSeed);

/// 1 iff ia >= ib.
inline int brief_test(std::uint8_t ia, std::uint8_t ib) { return ia >= ib ? 1 : 0; }

/// M-bit descriptor stored MSB-first: bit i lives in byte i / 8 at position
/// 7 - i % 8, so the hex form starts with pair 0's bit.
class Descriptor {
 public:
  Descriptor() = default;
  explicit Descriptor(int bits);

  int size() const { return bits_; }
  bool test(int i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }
  void set(int i, bool value);

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  /// Lowercase hex, two characters per byte.
  std::string to_hex() const;
  /// Throws std::invalid_argument on non-hex characters or odd length.
  static Descriptor from_hex(std::string_view hex, int bits);

  friend bool operator==(const Descriptor&, const Descriptor&) = default;

 private:
  int bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

/// Steered BRIEF over an arbitrary smoothed-patch accessor
/// `sample(dx, dy)`, dx, dy in [-15, 15].
template <typename Sampler>
Descriptor steered_brief(Sampler&& sample, Orientation o,
                         std::span<const PatternPair> pattern) {
  Descriptor d(static_cast<int>(pattern.size()));
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Offset a = rotate_to_grid(pattern[i].a, o);
    const Offset b = rotate_to_grid(pattern[i].b, o);
    d.set(static_cast<int>(i), brief_test(sample(a.dx, a.dy), sample(b.dx, b.dy)));
  }
  return d;
}

/// Throws std::out_of_range if f violates the feature margin.
Descriptor compute_descriptor(const Image& smoothed, Coordinate f, Orientation o,
                              std::span<const PatternPair> pattern);

/// Popcount of XOR. Throws std::invalid_argument on a length mismatch.
int hamming(const Descriptor& a, const Descriptor& b);

}  // namespace orbstream
