#include "orbstream/streaming.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace orbstream {

LineBuffer::LineBuffer(int lines, int width)
    : lines_(lines), width_(width),
      storage_(static_cast<std::size_t>(lines) * width, 0) {
  if (lines < 1 || width < 1) {
    throw std::invalid_argument("line buffer needs positive geometry");
  }
}

std::size_t LineBuffer::occupancy() const {
  return static_cast<std::size_t>(
      std::min<std::uint64_t>(consumed_, storage_.size()));
}

void LineBuffer::push(std::uint8_t value) {
  storage_[consumed_ % storage_.size()] = value;
  ++consumed_;
}

void LineBuffer::reset() {
  consumed_ = 0;
  std::fill(storage_.begin(), storage_.end(), 0);
}

std::uint8_t LineBuffer::tap(int row, int col) const {
  if (row < 0) return 0;
  const std::uint64_t index = static_cast<std::uint64_t>(row) * width_ + col;
  if (index >= consumed_) return 0;
  if (consumed_ - index > storage_.size()) {
    throw std::logic_error("line buffer tap on evicted row " + std::to_string(row));
  }
  return storage_[index % storage_.size()];
}

std::string_view to_string(TraceEventKind kind) {
  switch (kind) {
    case TraceEventKind::kFeatureDetected: return "feature_detected";
    case TraceEventKind::kStallBegin: return "stall_begin";
    case TraceEventKind::kStallEnd: return "stall_end";
    case TraceEventKind::kDescriptorEmitted: return "descriptor_emitted";
  }
  return "unknown";
}

StreamingCore::StreamingCore(const ExtractParams& params,
                             std::vector<PatternPair> pattern,
                             StreamOptions options)
    : params_(params), pattern_(std::move(pattern)), options_(options),
      mask_(circular_mask()) {
  validate(params_);
  if (pattern_.empty()) throw std::invalid_argument("empty sampling pattern");
}

void StreamingCore::begin_frame(int width, int height, int level) {
  if (active_ && !frame_complete()) {
    throw std::logic_error("begin_frame before the current frame completed");
  }
  if (width < 1 || height < 1) throw std::invalid_argument("empty frame");
  width_ = width;
  height_ = height;
  level_ = level;
  pushed_ = 0;
  active_ = true;
  lb1_ = LineBuffer(kLb1Lines, width);
  lb2_ = LineBuffer(kLb2Lines, width);
  lb3_ = LineBuffer(kLb3Lines, width);
  rb1_.clear();
  rb2_.clear();
  rb3_.clear();
  control_ = ControlState::kShifting;
  pending_.clear();
}

bool StreamingCore::frame_complete() const {
  return active_ &&
         pushed_ == static_cast<std::uint64_t>(width_) * static_cast<std::uint64_t>(height_);
}

std::uint64_t StreamingCore::smoothing_latency() const {
  return static_cast<std::uint64_t>(kSmoothRadius) * width_ + kSmoothRadius;
}

std::size_t StreamingCore::buffer_capacity_bytes() const {
  return lb1_.capacity() + lb2_.capacity() + lb3_.capacity() +
         RegisterBank<kPatchSize>::capacity() * 2 +
         RegisterBank<2 * kSmoothRadius + 1>::capacity();
}

void StreamingCore::log(TraceEventKind kind, Coordinate at) {
  if (options_.trace) trace_.push_back({cycles_, kind, at.x, at.y, at.level});
}

void StreamingCore::record_cycle() {
  if (options_.record_history) {
    history_.push_back(
        {cycles_, control_, lb1_.consumed(), lb2_.consumed(), lb3_.consumed()});
  }
}

std::vector<Feature> StreamingCore::push_pixel(std::uint8_t pixel) {
  if (!active_) throw std::logic_error("push_pixel before begin_frame");
  if (frame_complete()) throw std::logic_error("push_pixel after end-of-frame");

  const int x = static_cast<int>(pushed_ % width_);
  const int y = static_cast<int>(pushed_ / width_);
  ++pushed_;
  ++cycles_;

  // Stage 1: raw pixel into LB1/LB2 and the newest column into RB1/RB2.
  lb1_.push(pixel);
  lb2_.push(pixel);
  std::array<std::uint8_t, kPatchSize> column;
  for (int i = 0; i < kPatchSize; ++i) column[i] = lb1_.tap(y - kPatchSize + 1 + i, x);
  rb1_.shift_in(column);
  std::array<std::uint8_t, 2 * kSmoothRadius + 1> small_column;
  for (int i = 0; i < kLb2Lines; ++i) small_column[i] = lb2_.tap(y - kLb2Lines + 1 + i, x);
  rb2_.shift_in(small_column);

  // Stage 2: RB2 is centred on (x - 3, y - 3). Border pixels are never read
  // by a descriptor, so they enter LB3 as 0.
  if (pushed_ > smoothing_latency()) {
    const std::uint64_t s = pushed_ - 1 - smoothing_latency();
    const int sx = static_cast<int>(s % width_);
    const int sy = static_cast<int>(s / width_);
    const bool interior = sx >= kSmoothRadius && sx < width_ - kSmoothRadius &&
                          sy >= kSmoothRadius && sy < height_ - kSmoothRadius;
    const std::uint8_t smoothed =
        interior ? gaussian_response([&](int dx, int dy) { return rb2_.centered(dx, dy); })
                 : std::uint8_t{0};
    lb3_.push(smoothed);
    for (int i = 0; i < kPatchSize; ++i) column[i] = lb3_.tap(sy - kPatchSize + 1 + i, sx);
    rb3_.shift_in(column);
  }

  peak_buffer_bytes_ = std::max(
      peak_buffer_bytes_, lb1_.occupancy() + lb2_.occupancy() + lb3_.occupancy() +
                              RegisterBank<kPatchSize>::capacity() * 2 +
                              RegisterBank<2 * kSmoothRadius + 1>::capacity());
  record_cycle();

  detect_at_rb1_centre(x - kPatchRadius, y - kPatchRadius);

  std::vector<Feature> emitted;
  const Coordinate rb3_centre{x - kFeatureMargin, y - kFeatureMargin, level_};
  if (!pending_.empty() && pending_.front().at == rb3_centre) {
    emitted.push_back(stall_for_descriptor(pending_.front()));
    pending_.pop_front();
  }
  return emitted;
}

void StreamingCore::detect_at_rb1_centre(int cx, int cy) {
  if (!in_feature_margin(cx, cy, width_, height_)) return;
  const auto sample = [&](int dx, int dy) { return rb1_.centered(dx, dy); };
  if (!segment_test_at(sample, params_.threshold)) return;

  FeaturePoint point;
  point.at = {cx, cy, level_};
  point.moments = accumulate_moments(sample, mask_);
  point.orientation = orient(point.moments, params_.wordlen);
  pending_.push_back(point);
  queue_high_water_ = std::max(queue_high_water_, pending_.size());
  log(TraceEventKind::kFeatureDetected, point.at);
}

Feature StreamingCore::stall_for_descriptor(const FeaturePoint& point) {
  control_ = ControlState::kStalled;
  ++stall_events_;
  log(TraceEventKind::kStallBegin, point.at);

  const auto sample = [&](int dx, int dy) { return rb3_.centered(dx, dy); };
  Descriptor descriptor(static_cast<int>(pattern_.size()));
  for (std::size_t i = 0; i < pattern_.size(); ++i) {
    ++cycles_;
    ++stall_cycles_;
    const Offset a = rotate_to_grid(pattern_[i].a, point.orientation);
    const Offset b = rotate_to_grid(pattern_[i].b, point.orientation);
    descriptor.set(static_cast<int>(i),
                   brief_test(sample(a.dx, a.dy), sample(b.dx, b.dy)));
    record_cycle();
  }

  control_ = ControlState::kShifting;
  log(TraceEventKind::kStallEnd, point.at);
  log(TraceEventKind::kDescriptorEmitted, point.at);
  return {point, std::move(descriptor)};
}

StreamRunResult run_stream(const Pyramid& pyramid, const ExtractParams& params,
                           std::span<const PatternPair> pattern,
                           StreamOptions options) {
  StreamingCore core(params, {pattern.begin(), pattern.end()}, options);
  StreamRunResult run;
  for (int level = 0; level < 2; ++level) {
    const Image& img = pyramid.levels[level];
    run.extraction.levels[level].width = img.width();
    run.extraction.levels[level].height = img.height();
    core.begin_frame(img.width(), img.height(), level);
    std::size_t count = 0;
    for (std::uint8_t p : img.pixels()) {
      for (auto& f : core.push_pixel(p)) {
        run.extraction.features.push_back(std::move(f));
        ++count;
      }
    }
    if (core.pending_features() != 0) {
      throw std::logic_error("features left pending at end of frame");
    }
    run.extraction.levels[level].features = count;
    run.buffer_capacity_bytes =
        std::max(run.buffer_capacity_bytes, core.buffer_capacity_bytes());
  }
  run.cycles = core.cycles();
  run.stall_cycles = core.stall_cycles();
  run.stall_events = core.stall_events();
  run.queue_high_water = core.queue_high_water();
  run.peak_buffer_bytes = core.peak_buffer_bytes();
  run.trace.assign(core.trace().begin(), core.trace().end());
  return run;
}

StreamRunResult run_stream(const Pyramid& pyramid, const ExtractParams& params,
                           StreamOptions options) {
  validate(params);
  const auto pattern = generate_pattern(params.pairs, params.seed);
  return run_stream(pyramid, params, pattern, options);
}

std::string format_trace_csv(std::span<const TraceEvent> events) {
  std::string out = "cycle,event,x,y,level\n";
  for (const auto& e : events) {
    out += std::to_string(e.cycle);
    out += ',';
    out += to_string(e.kind);
    out += ',' + std::to_string(e.x) + ',' + std::to_string(e.y) + ',' +
           std::to_string(e.level) + '\n';
  }
  return out;
}

}  // namespace orbstream
