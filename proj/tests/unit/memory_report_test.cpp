#include <gtest/gtest.h>

#include <random>

#include "orbstream/streaming.hpp"

namespace orbstream {
namespace {

TEST(MemoryReport, VgaFigures) {
  const MemoryReport r = memory_report_for_frame(640, 480);
  ASSERT_EQ(r.levels.size(), 2u);
  EXPECT_EQ(r.levels[1].dims.width, 533);
  EXPECT_EQ(r.levels[1].dims.height, 400);
  EXPECT_EQ(r.baseline_bytes, 640 * 480 + 533 * 400);
  EXPECT_EQ(r.baseline_bytes, 520400);
  EXPECT_EQ(r.streaming_bytes, 84879);
  EXPECT_EQ(r.savings_bytes, 435521);
  EXPECT_GE(r.savings_bytes, 400 * 1024);
  EXPECT_FALSE(r.formula.empty());
  EXPECT_EQ(kPublishedSavingsBytes, 588800);
}

TEST(MemoryReport, TinyFrameHasNoSaving) {
  const MemoryReport r = memory_report_for_frame(38, 38);
  EXPECT_EQ(r.baseline_bytes, 38 * 38 + 31 * 31);
  EXPECT_EQ(r.streaming_bytes, 69 * 38 + 69 * 31 + 2 * 1971);
  EXPECT_LE(r.savings_bytes, 0);
}

TEST(MemoryReport, AgreesWithStreamingCoreCapacity) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    const int w = 40 + static_cast<int>(rng() % 2000);
    const int h = 40 + static_cast<int>(rng() % 2000);
    const LevelDims dims[] = {{w, h}};
    const MemoryReport r = memory_report(dims);
    StreamingCore core({}, generate_pattern(8, 1));
    core.begin_frame(w, h, 0);
    EXPECT_EQ(r.streaming_bytes, static_cast<std::int64_t>(core.buffer_capacity_bytes()));
    EXPECT_EQ(r.savings_bytes, r.baseline_bytes - r.streaming_bytes);
    // Line buffers grow with width only; the baseline grows with area.
    const LevelDims taller[] = {{w, h + 1}};
    EXPECT_EQ(memory_report(taller).streaming_bytes, r.streaming_bytes);
    EXPECT_EQ(memory_report(taller).baseline_bytes, r.baseline_bytes + w);
  }
}

TEST(MemoryReport, RejectsEmptyLevels) {
  const LevelDims dims[] = {{0, 10}};
  EXPECT_THROW(memory_report(dims), std::invalid_argument);
}

}  // namespace
}  // namespace orbstream
