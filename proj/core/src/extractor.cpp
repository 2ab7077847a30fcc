#include "orbstream/extractor.hpp"

#include <stdexcept>
#include <string>

namespace orbstream {

void validate(const ExtractParams& params) {
  if (params.threshold < 0 || params.threshold > 255) {
    throw std::invalid_argument("threshold must be in 0..255");
  }
  if (params.wordlen && (*params.wordlen < 1 || *params.wordlen > kMomentMagnitudeBits)) {
    throw std::invalid_argument("word length must be in 1..20");
  }
  if (params.pairs < 1) throw std::invalid_argument("pair count must be positive");
}

FeaturePoint describe_point(const Image& level_image, Coordinate at,
                            const CircularMask& mask, std::optional<int> wordlen) {
  FeaturePoint p;
  p.at = at;
  p.moments = compute_moments(level_image, at, mask);
  p.orientation = orient(p.moments, wordlen);
  return p;
}

ExtractionResult extract_batch(const Pyramid& pyramid, const ExtractParams& params,
                               std::span<const PatternPair> pattern) {
  validate(params);
  const CircularMask mask = circular_mask();
  ExtractionResult result;
  for (int level = 0; level < 2; ++level) {
    const Image& img = pyramid.levels[level];
    result.levels[level].width = img.width();
    result.levels[level].height = img.height();

    const auto corners = detect_features(img, params.threshold, level);
    if (corners.empty()) continue;
    const Image smoothed = gaussian_smooth(img);
    for (const Coordinate& c : corners) {
      Feature f;
      f.point = describe_point(img, c, mask, params.wordlen);
      f.descriptor = compute_descriptor(smoothed, c, f.point.orientation, pattern);
      result.features.push_back(std::move(f));
    }
    result.levels[level].features = corners.size();
  }
  return result;
}

ExtractionResult extract_batch(const Pyramid& pyramid, const ExtractParams& params) {
  validate(params);
  const auto pattern = generate_pattern(params.pairs, params.seed);
  return extract_batch(pyramid, params, pattern);
}

}  // namespace orbstream
