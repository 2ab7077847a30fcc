#include <stdexcept>

#include "orbstream/streaming.hpp"

namespace orbstream {

MemoryReport memory_report(std::span<const LevelDims> levels) {
  MemoryReport report;
  constexpr std::int64_t kRegisterBanks =
      RegisterBank<kPatchSize>::capacity() * 2 +
      RegisterBank<2 * kSmoothRadius + 1>::capacity();
  for (const LevelDims& d : levels) {
    if (d.width < 1 || d.height < 1) {
      throw std::invalid_argument("level dimensions must be positive");
    }
    LevelBufferBytes b;
    b.dims = d;
    b.lb1 = std::int64_t{StreamingCore::kLb1Lines} * d.width;
    b.lb2 = std::int64_t{StreamingCore::kLb2Lines} * d.width;
    b.lb3 = std::int64_t{StreamingCore::kLb3Lines} * d.width;
    b.register_banks = kRegisterBanks;
    b.smoothed_frame = std::int64_t{d.width} * d.height;
    report.streaming_bytes += b.lb1 + b.lb2 + b.lb3 + b.register_banks;
    report.baseline_bytes += b.smoothed_frame;
    report.levels.push_back(b);
  }
  report.savings_bytes = report.baseline_bytes - report.streaming_bytes;
  report.formula =
      "streaming = sum over levels of (31 + 7 + 31) * width + (31*31 + 7*7 + "
      "31*31); baseline = sum over levels of width * height; savings = "
      "baseline - streaming";
  return report;
}

MemoryReport memory_report_for_frame(int width, int height) {
  const auto [w1, h1] = pyramid_level1_dims(width, height);
  const LevelDims dims[] = {{width, height}, {w1, h1}};
  return memory_report(dims);
}

}  // namespace orbstream
