#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "orbstream/orientation.hpp"

namespace orbstream {

std::vector<Moments> enumerate_sweep_samples(const SweepSampleSpec& spec) {
  if (spec.grid_steps_per_octave < 0 || spec.grid_angles < 0 ||
      spec.random_pairs < 0) {
    throw std::invalid_argument("sweep sample counts must be non-negative");
  }
  constexpr std::int64_t kMax = (std::int64_t{1} << kMomentMagnitudeBits) - 1;
  std::vector<Moments> samples;

  if (spec.grid_steps_per_octave > 0 && spec.grid_angles > 0) {
    const int steps = spec.grid_steps_per_octave * kMomentMagnitudeBits;
    for (int i = 0; i <= steps; ++i) {
      const double radius = std::min(
          std::exp2(static_cast<double>(i) / spec.grid_steps_per_octave),
          static_cast<double>(kMax));
      for (int j = 0; j < spec.grid_angles; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / spec.grid_angles;
        const auto clampm = [&](double v) {
          return std::clamp<std::int64_t>(std::llround(v), -kMax, kMax);
        };
        samples.push_back(
            {clampm(radius * std::cos(theta)), clampm(radius * std::sin(theta))});
      }
    }
  }

  std::mt19937_64 rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(2 * kMax + 1);
  const auto draw = [&] {
    return static_cast<std::int64_t>(rng() % span) - kMax;
  };
  for (int i = 0; i < spec.random_pairs; ++i) {
    const std::int64_t m10 = draw();
    const std::int64_t m01 = draw();
    samples.push_back({m10, m01});
  }

  samples.insert(samples.end(), spec.extra.begin(), spec.extra.end());
  return samples;
}

std::vector<SweepRow> wordlength_sweep(std::span<const int> wordlens,
                                       std::span<const Moments> samples) {
  if (wordlens.empty()) throw std::invalid_argument("no word lengths given");
  if (samples.empty()) throw std::invalid_argument("empty sweep sample set");
  for (int n : wordlens) {
    if (n < 1 || n > kMomentMagnitudeBits) {
      throw std::invalid_argument("word length out of range: " +
                                  std::to_string(n));
    }
  }

  std::vector<Orientation> full(samples.size());
  std::transform(samples.begin(), samples.end(), full.begin(),
                 [](Moments m) { return compute_sincos(m); });

  std::vector<SweepRow> rows;
  rows.reserve(wordlens.size());
  for (int n : wordlens) {
    SweepRow row;
    row.wordlen = n;
    int best_r2 = -1;
    double sum = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const Orientation truncated = compute_sincos(truncate_moments(samples[s], n));
      for (int dy = -kPatchRadius; dy <= kPatchRadius; ++dy) {
        for (int dx = -kPatchRadius; dx <= kPatchRadius; ++dx) {
          const double e = rotation_error({dx, dy}, full[s], truncated);
          sum += e;
          const int r2 = dx * dx + dy * dy;
          if (e > row.max_error || (e == row.max_error && r2 > best_r2)) {
            row.max_error = e;
            row.argmax = {dx, dy};
            best_r2 = r2;
          }
        }
      }
    }
    row.mean_error =
        sum / (static_cast<double>(samples.size()) * kPatchSize * kPatchSize);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> wordlength_sweep(std::span<const int> wordlens,
                                       const SweepSampleSpec& spec) {
  const auto samples = enumerate_sweep_samples(spec);
  return wordlength_sweep(wordlens, samples);
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "N,max_error,mean_error,argmax_dx,argmax_dy\n";
  char line[128];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%d,%d\n", r.wordlen,
                  r.max_error, r.mean_error, r.argmax.dx, r.argmax.dy);
    out += line;
  }
  return out;
}

}  // namespace orbstream
