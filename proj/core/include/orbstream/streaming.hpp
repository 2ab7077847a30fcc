#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "orbstream/extractor.hpp"

namespace orbstream {

/// Ring of `lines` raster rows fed one pixel at a time. The newest pixel
/// overwrites the one exactly `lines` rows above it.
class LineBuffer {
 public:
  LineBuffer() = default;
  LineBuffer(int lines, int width);

  int lines() const { return lines_; }
  int width() const { return width_; }
  std::size_t capacity() const { return storage_.size(); }
  /// Write cursor: pixels pushed since the last reset.
  std::uint64_t consumed() const { return consumed_; }
  std::size_t occupancy() const;

  void push(std::uint8_t value);
  void reset();

  /// Pixel at stream row/column. Rows before the start of the stream read
  /// as 0; rows already evicted throw std::logic_error.
  std::uint8_t tap(int row, int col) const;

 private:
  int lines_ = 0;
  int width_ = 0;
  std::uint64_t consumed_ = 0;
  std::vector<std::uint8_t> storage_;
};

/// Fully materialised N x N window. Each shift drops the oldest column and
/// appends a new rightmost column.
template <int N>
class RegisterBank {
 public:
  static constexpr int kSize = N;
  static constexpr int kHalf = N / 2;
  static constexpr std::size_t capacity() { return std::size_t{N} * N; }

  void shift_in(std::span<const std::uint8_t, N> column) {
    head_ = (head_ + 1) % N;
    for (int row = 0; row < N; ++row) cells_[head_ * N + row] = column[row];
  }

  /// col 0 is the oldest column, N - 1 the newest; row 0 is the top.
  std::uint8_t at(int col, int row) const {
    return cells_[((head_ + 1 + col) % N) * N + row];
  }

  /// Offset from the window centre.
  std::uint8_t centered(int dx, int dy) const { return at(dx + kHalf, dy + kHalf); }

  void clear() {
    cells_.fill(0);
    head_ = N - 1;
  }

 private:
  std::array<std::uint8_t, std::size_t{N} * N> cells_{};
  int head_ = N - 1;
};

enum class ControlState { kShifting, kStalled };

enum class TraceEventKind {
  kFeatureDetected,
  kStallBegin,
  kStallEnd,
  kDescriptorEmitted,
};

std::string_view to_string(TraceEventKind kind);

struct TraceEvent {
  std::uint64_t cycle = 0;
  TraceEventKind kind = TraceEventKind::kFeatureDetected;
  int x = 0;
  int y = 0;
  int level = 0;
};

/// Buffer cursors sampled at the end of a cycle.
struct CycleRecord {
  std::uint64_t cycle = 0;
  ControlState control = ControlState::kShifting;
  std::uint64_t lb1 = 0;
  std::uint64_t lb2 = 0;
  std::uint64_t lb3 = 0;
};

struct StreamOptions {
  bool trace = false;
  /// Per-cycle cursor log; one record per shift or stall cycle.
  bool record_history = false;
};

/// Dataflow model of the extractor: raw pixels feed LB1/RB1 (detection and
/// moments) and LB2/RB2 (7x7 smoothing); smoothed pixels feed LB3/RB3
/// (descriptor patch). One input pixel is one shift cycle. When RB3 is
/// centred on the oldest pending feature, all buffers freeze for one cycle
/// per pattern pair while the descriptor is computed.
class StreamingCore {
 public:
  static constexpr int kLb1Lines = kPatchSize;
  static constexpr int kLb2Lines = 2 * kSmoothRadius + 1;
  static constexpr int kLb3Lines = kPatchSize;

  StreamingCore(const ExtractParams& params, std::vector<PatternPair> pattern,
                StreamOptions options = {});

  /// Resizes the buffers for a new frame. Throws std::logic_error if the
  /// previous frame is unfinished, std::invalid_argument on bad dims.
  void begin_frame(int width, int height, int level);

  /// Feeds the next raster pixel; returns features completed by it.
  /// Throws std::logic_error after end-of-frame or before begin_frame.
  std::vector<Feature> push_pixel(std::uint8_t pixel);

  bool frame_complete() const;
  /// Pixel latency between LB1/LB2 input and LB3 input.
  std::uint64_t smoothing_latency() const;

  ControlState control() const { return control_; }
  std::uint64_t cycles() const { return cycles_; }
  std::uint64_t stall_cycles() const { return stall_cycles_; }
  std::uint64_t stall_events() const { return stall_events_; }
  std::size_t pending_features() const { return pending_.size(); }
  std::size_t queue_high_water() const { return queue_high_water_; }

  const LineBuffer& lb1() const { return lb1_; }
  const LineBuffer& lb2() const { return lb2_; }
  const LineBuffer& lb3() const { return lb3_; }
  const RegisterBank<kPatchSize>& rb1() const { return rb1_; }
  const RegisterBank<2 * kSmoothRadius + 1>& rb2() const { return rb2_; }
  const RegisterBank<kPatchSize>& rb3() const { return rb3_; }

  /// Static capacity of all line buffers and register banks for the
  /// current frame width.
  std::size_t buffer_capacity_bytes() const;
  /// Largest filled buffer footprint seen so far.
  std::size_t peak_buffer_bytes() const { return peak_buffer_bytes_; }

  std::span<const TraceEvent> trace() const { return trace_; }
  std::span<const CycleRecord> history() const { return history_; }

 private:
  void log(TraceEventKind kind, Coordinate at);
  void record_cycle();
  void detect_at_rb1_centre(int x, int y);
  Feature stall_for_descriptor(const FeaturePoint& point);

  ExtractParams params_;
  std::vector<PatternPair> pattern_;
  StreamOptions options_;
  CircularMask mask_;

  int width_ = 0;
  int height_ = 0;
  int level_ = 0;
  std::uint64_t pushed_ = 0;
  bool active_ = false;

  LineBuffer lb1_;
  LineBuffer lb2_;
  LineBuffer lb3_;
  RegisterBank<kPatchSize> rb1_;
  RegisterBank<2 * kSmoothRadius + 1> rb2_;
  RegisterBank<kPatchSize> rb3_;

  ControlState control_ = ControlState::kShifting;
  std::deque<FeaturePoint> pending_;
  std::uint64_t cycles_ = 0;
  std::uint64_t stall_cycles_ = 0;
  std::uint64_t stall_events_ = 0;
  std::size_t queue_high_water_ = 0;
  std::size_t peak_buffer_bytes_ = 0;

  std::vector<TraceEvent> trace_;
  std::vector<CycleRecord> history_;
};

struct StreamRunResult {
  ExtractionResult extraction;
  std::uint64_t cycles = 0;
  std::uint64_t stall_cycles = 0;
  std::uint64_t stall_events = 0;
  std::size_t queue_high_water = 0;
  std::size_t peak_buffer_bytes = 0;
  std::size_t buffer_capacity_bytes = 0;
  std::vector<TraceEvent> trace;
};

/// Streams level 0 then level 1 through one StreamingCore.
StreamRunResult run_stream(const Pyramid& pyramid, const ExtractParams& params,
                           std::span<const PatternPair> pattern,
                           StreamOptions options = {});
StreamRunResult run_stream(const Pyramid& pyramid,
                           const ExtractParams& params = {},
                           StreamOptions options = {});

/// "cycle,event,x,y,level" rows.
std::string format_trace_csv(std::span<const TraceEvent> events);

// ---------------------------------------------------------------------------
// On-chip memory accounting

struct LevelDims {
  int width = 0;
  int height = 0;
};

struct LevelBufferBytes {
  LevelDims dims;
  std::int64_t lb1 = 0;
  std::int64_t lb2 = 0;
  std::int64_t lb3 = 0;
  std::int64_t register_banks = 0;
  std::int64_t smoothed_frame = 0;
};

/// Streaming footprint versus holding both smoothed frames. Streaming
/// bytes sum, per level, LB1 (31 lines) + LB2 (7) + LB3 (31) at that
/// level's width plus RB1 + RB2 + RB3 (961 + 49 + 961); the baseline sums
/// width * height over levels. Savings may be negative for tiny frames.
struct MemoryReport {
  std::vector<LevelBufferBytes> levels;
  std::int64_t streaming_bytes = 0;
  std::int64_t baseline_bytes = 0;
  std::int64_t savings_bytes = 0;
  std::string formula;
};

/// 575 KiB, the published on-chip saving, kept for side-by-side output.
inline constexpr std::int64_t kPublishedSavingsBytes = 575 * 1024;
inline constexpr std::string_view kPublishedSavingsText = "575K bytes";

MemoryReport memory_report(std::span<const LevelDims> levels);
/// Level 1 derived with pyramid_level1_dims.
MemoryReport memory_report_for_frame(int width, int height);

}  // namespace orbstream
