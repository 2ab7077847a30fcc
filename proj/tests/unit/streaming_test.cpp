#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "orbstream/streaming.hpp"
#include "support/test_images.hpp"

namespace orbstream {
namespace {

std::vector<Feature> stream_level(StreamingCore& core, const Image& img, int level = 0) {
  core.begin_frame(img.width(), img.height(), level);
  std::vector<Feature> out;
  for (std::uint8_t p : img.pixels()) {
    for (auto& f : core.push_pixel(p)) out.push_back(std::move(f));
  }
  return out;
}

TEST(LineBuffer, TapWindowAndEviction) {
  LineBuffer lb(3, 4);
  EXPECT_EQ(lb.capacity(), 12u);
  EXPECT_EQ(lb.tap(-1, 0), 0);
  EXPECT_EQ(lb.tap(0, 0), 0);  // not yet written
  for (int i = 0; i < 20; ++i) lb.push(static_cast<std::uint8_t>(i + 1));
  EXPECT_EQ(lb.consumed(), 20u);
  EXPECT_EQ(lb.occupancy(), 12u);
  // Pixels 8..19 remain: rows 2 (from col 0) through 4.
  EXPECT_EQ(lb.tap(2, 0), 9);
  EXPECT_EQ(lb.tap(4, 3), 20);
  EXPECT_THROW(lb.tap(1, 3), std::logic_error);
  lb.reset();
  EXPECT_EQ(lb.consumed(), 0u);
  EXPECT_EQ(lb.tap(0, 0), 0);
  EXPECT_THROW(LineBuffer(0, 4), std::invalid_argument);
}

TEST(RegisterBank, HoldsTrailingColumns) {
  RegisterBank<5> bank;
  Image img = testing::noise_image(12, 5, 3);
  for (int x = 0; x < 12; ++x) {
    std::array<std::uint8_t, 5> col;
    for (int r = 0; r < 5; ++r) col[r] = img.at(x, r);
    bank.shift_in(col);
    if (x < 4) continue;
    for (int c = 0; c < 5; ++c)
      for (int r = 0; r < 5; ++r) ASSERT_EQ(bank.at(c, r), img.at(x - 4 + c, r));
    EXPECT_EQ(bank.centered(0, 0), img.at(x - 2, 2));
  }
  bank.clear();
  EXPECT_EQ(bank.at(4, 4), 0);
}

TEST(StreamingCore, MatchesBatchOnDotAndNoise) {
  const auto pattern = generate_pattern();
  for (const Image& img : {testing::single_dot(70, 60, 35, 30), testing::noise_image(72, 64, 5),
                           testing::rectangles(90, 80, 2, 6)}) {
    const Pyramid pyr = build_pyramid(img);
    const ExtractionResult batch = extract_batch(pyr, {}, pattern);
    const StreamRunResult stream = run_stream(pyr, {}, pattern);
    EXPECT_EQ(stream.extraction.features, batch.features);
    EXPECT_EQ(stream.stall_events, batch.features.size());
    EXPECT_EQ(stream.stall_cycles, batch.features.size() * pattern.size());
  }
}

TEST(StreamingCore, ConstantFrameEmitsNothingAndNeverStalls) {
  const StreamRunResult r = run_stream(build_pyramid(testing::constant_image(64, 48, 100)));
  EXPECT_TRUE(r.extraction.features.empty());
  EXPECT_EQ(r.stall_cycles, 0u);
  EXPECT_EQ(r.stall_events, 0u);
  EXPECT_EQ(r.cycles, 64u * 48u + 53u * 40u);
}

TEST(StreamingCore, EmissionHappensWhenPatchCompletes) {
  const Image img = testing::noise_image(80, 70, 9);
  ExtractParams params;
  params.threshold = 5;
  StreamingCore core(params, generate_pattern());
  core.begin_frame(img.width(), img.height(), 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < img.pixels().size(); ++i) {
    const auto out = core.push_pixel(img.pixels()[i]);
    // Nothing can leave the core before the first full 37x37 neighbourhood.
    if (i < 36u * 80u + 36u) ASSERT_TRUE(out.empty()) << i;
    for (const auto& f : out) {
      ASSERT_EQ(i, static_cast<std::size_t>(f.point.at.y + 18) * 80 + f.point.at.x + 18);
      ++total;
    }
  }
  EXPECT_GT(total, 0u);
  EXPECT_TRUE(core.frame_complete());
  EXPECT_EQ(core.pending_features(), 0u);
}

TEST(StreamingCore, FrameProtocolErrors) {
  StreamingCore core({}, generate_pattern());
  EXPECT_THROW(core.push_pixel(0), std::logic_error);
  core.begin_frame(40, 40, 0);
  core.push_pixel(1);
  EXPECT_THROW(core.begin_frame(40, 40, 0), std::logic_error);
  for (int i = 1; i < 1600; ++i) core.push_pixel(1);
  EXPECT_TRUE(core.frame_complete());
  EXPECT_THROW(core.push_pixel(0), std::logic_error);
  EXPECT_NO_THROW(core.begin_frame(40, 40, 1));
  StreamingCore fresh({}, generate_pattern());
  EXPECT_THROW(fresh.begin_frame(0, 40, 1), std::invalid_argument);
  EXPECT_THROW(StreamingCore({}, {}), std::invalid_argument);
}

TEST(StreamingCore, BuffersFreezeWhileStalled) {
  StreamOptions opts;
  opts.record_history = true;
  const int pairs = 32;
  ExtractParams params;
  params.pairs = pairs;
  StreamingCore core(params, generate_pattern(pairs, 1), opts);
  const Image img = testing::rectangles(64, 56, 7, 5);
  const auto features = stream_level(core, img);
  ASSERT_FALSE(features.empty());

  const auto h = core.history();
  ASSERT_EQ(h.size(), core.cycles());
  EXPECT_EQ(core.stall_cycles(), features.size() * pairs);
  const std::uint64_t latency = core.smoothing_latency();
  EXPECT_EQ(latency, 3u * 64u + 3u);
  std::size_t stalled = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(h[i].cycle, i + 1);
    EXPECT_EQ(h[i].lb1, h[i].lb2);
    EXPECT_EQ(h[i].lb3, h[i].lb1 > latency ? h[i].lb1 - latency : 0);
    if (h[i].control == ControlState::kStalled) {
      ++stalled;
      ASSERT_GT(i, 0u);
      EXPECT_EQ(h[i].lb1, h[i - 1].lb1);
      EXPECT_EQ(h[i].lb3, h[i - 1].lb3);
    } else if (i > 0) {
      EXPECT_EQ(h[i].lb1, h[i - 1].lb1 + 1);
    }
  }
  EXPECT_EQ(stalled, core.stall_cycles());
}

TEST(StreamingCore, BufferAccounting) {
  StreamingCore core({}, generate_pattern());
  const Image img = testing::noise_image(640, 40, 2);
  stream_level(core, img);
  EXPECT_EQ(core.lb1().capacity() + core.lb3().capacity(), 39680u);
  EXPECT_EQ(core.buffer_capacity_bytes(), 69u * 640u + 2u * 961u + 49u);
  EXPECT_LE(core.peak_buffer_bytes(), core.buffer_capacity_bytes());
  EXPECT_EQ(core.peak_buffer_bytes(), core.buffer_capacity_bytes());
}

TEST(StreamingCore, TraceOrderAndCsv) {
  StreamOptions opts;
  opts.trace = true;
  StreamingCore core({}, generate_pattern(), opts);
  ASSERT_EQ(stream_level(core, testing::single_dot(60, 60, 30, 30)).size(), 1u);
  const auto trace = core.trace();
  ASSERT_EQ(trace.size(), 4u);
  EXPECT_EQ(trace[0].kind, TraceEventKind::kFeatureDetected);
  EXPECT_EQ(trace[1].kind, TraceEventKind::kStallBegin);
  EXPECT_EQ(trace[2].kind, TraceEventKind::kStallEnd);
  EXPECT_EQ(trace[3].kind, TraceEventKind::kDescriptorEmitted);
  EXPECT_EQ(trace[2].cycle - trace[1].cycle, 256u);
  // Detected when RB1 centres on it, described three rows and columns later.
  EXPECT_EQ(trace[0].cycle, 45u * 60u + 46u);
  EXPECT_EQ(trace[1].cycle, 48u * 60u + 49u);

  const std::string csv = format_trace_csv(trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "cycle,event,x,y,level");
  EXPECT_NE(csv.find(",feature_detected,30,30,0\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

}  // namespace
}  // namespace orbstream
