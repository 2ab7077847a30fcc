#include "orbstream/descriptor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "orbstream/fast.hpp"

namespace orbstream {

Image gaussian_smooth(const Image& img) {
  Image out(img.width(), img.height());
  const int w = img.width();
  const int h = img.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = gaussian_response([&](int dx, int dy) {
        return img.at(std::clamp(x + dx, 0, w - 1), std::clamp(y + dy, 0, h - 1));
      });
    }
  }
  return out;
}

GaussianOffsetSampler::GaussianOffsetSampler(std::uint64_t seed) : rng_(seed) {}

double GaussianOffsetSampler::uniform() {
  // 53 random bits mapped onto (0, 1].
  return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
}

Offset GaussianOffsetSampler::draw() {
  const auto next = [this] {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  };
  const double gx = next();
  const double gy = next();
  return {static_cast<int>(std::lround(kPatternSigma * gx)),
          static_cast<int>(std::lround(kPatternSigma * gy))};
}

Offset GaussianOffsetSampler::draw_in_disc() {
  constexpr int kLimit = kPatternRadius * kPatternRadius;
  for (;;) {
    const Offset o = draw();
    if (o.dx * o.dx + o.dy * o.dy <= kLimit) return o;
  }
}

std::vector<PatternPair> generate_pattern(int pairs, std::uint64_t seed) {
  if (pairs < 1) throw std::invalid_argument("pattern needs at least one pair");
  GaussianOffsetSampler sampler(seed);
  std::vector<PatternPair> pattern;
  pattern.reserve(pairs);
  while (static_cast<int>(pattern.size()) < pairs) {
    const Offset a = sampler.draw_in_disc();
    const Offset b = sampler.draw_in_disc();
    if (a == b) continue;
    pattern.push_back({a, b});
  }
  return pattern;
}

Descriptor::Descriptor(int bits) : bits_(bits) {
  if (bits < 0) throw std::invalid_argument("negative descriptor width");
  bytes_.assign((bits + 7) / 8, 0);
}

void Descriptor::set(int i, bool value) {
  const auto bit = static_cast<std::uint8_t>(0x80u >> (i & 7));
  if (value) {
    bytes_[i >> 3] |= bit;
  } else {
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~bit);
  }
}

std::string Descriptor::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(bytes_.size() * 2);
  for (std::uint8_t b : bytes_) {
    hex.push_back(kDigits[b >> 4]);
    hex.push_back(kDigits[b & 0xf]);
  }
  return hex;
}

Descriptor Descriptor::from_hex(std::string_view hex, int bits) {
  Descriptor d(bits);
  if (hex.size() != d.bytes_.size() * 2) {
    throw std::invalid_argument("hex length does not match descriptor width");
  }
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
  };
  for (std::size_t i = 0; i < d.bytes_.size(); ++i) {
    d.bytes_[i] =
        static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return d;
}

Descriptor compute_descriptor(const Image& smoothed, Coordinate f, Orientation o,
                              std::span<const PatternPair> pattern) {
  if (!in_feature_margin(f.x, f.y, smoothed.width(), smoothed.height())) {
    throw std::out_of_range("descriptor centre (" + std::to_string(f.x) + ", " +
                            std::to_string(f.y) + ") violates the feature margin");
  }
  return steered_brief(
      [&](int dx, int dy) { return smoothed.at(f.x + dx, f.y + dy); }, o, pattern);
}

int hamming(const Descriptor& a, const Descriptor& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("descriptor widths differ");
  }
  int count = 0;
  const auto ab = a.bytes();
  const auto bb = b.bytes();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    count += std::popcount(static_cast<unsigned>(ab[i] ^ bb[i]));
  }
  return count;
}

}  // namespace orbstream
