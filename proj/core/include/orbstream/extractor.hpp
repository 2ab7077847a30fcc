#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbstream/descriptor.hpp"
#include "orbstream/fast.hpp"
#include "orbstream/image.hpp"
#include "orbstream/orientation.hpp"

namespace orbstream {

struct ExtractParams {
  int threshold = kDefaultFastThreshold;
  /// Moment word length; empty means full precision.
  std::optional<int> wordlen = kDefaultWordLength;
  int pairs = kDefaultPairs;
  std::uint64_t seed = kDefaultPatternSeed;
};

struct FeaturePoint {
  Coordinate at;
  Moments moments;
  Orientation orientation;
  friend bool operator==(const FeaturePoint&, const FeaturePoint&) = default;
};

struct Feature {
  FeaturePoint point;
  Descriptor descriptor;
  friend bool operator==(const Feature&, const Feature&) = default;
};

struct LevelSummary {
  int width = 0;
  int height = 0;
  std::size_t features = 0;
};

struct ExtractionResult {
  /// Sorted by (level, y, x).
  std::vector<Feature> features;
  std::array<LevelSummary, 2> levels{};
};

/// Moments and (optionally truncated) orientation for a detected corner.
FeaturePoint describe_point(const Image& level_image, Coordinate at,
                            const CircularMask& mask,
                            std::optional<int> wordlen);

/// Reference pipeline: detect, orient and describe each level in turn on
/// whole images. Levels too small for the feature margin yield no features.
ExtractionResult extract_batch(const Pyramid& pyramid, const ExtractParams& params,
                               std::span<const PatternPair> pattern);
ExtractionResult extract_batch(const Pyramid& pyramid,
                               const ExtractParams& params = {});

/// Throws std::invalid_argument on a threshold outside 0..255, a word
/// length outside 1..20 or a non-positive pair count.
void validate(const ExtractParams& params);

}  // namespace orbstream
