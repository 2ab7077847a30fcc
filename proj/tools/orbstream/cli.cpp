#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "orbstream/image.hpp"
#include "orbstream/orientation.hpp"

namespace orbstream::cli {
namespace {

constexpr std::string_view kBenchLabel =
    "software timing on the host CPU; not comparable to the 14.8 ms FPGA "
    "hardware latency";

std::string_view mode_name(Mode m) { return m == Mode::kBatch ? "batch" : "stream"; }

struct CommonFlags {
  int threshold = kDefaultFastThreshold;
  std::string wordlen = std::to_string(kDefaultWordLength);
  int pairs = kDefaultPairs;
  std::uint64_t seed = kDefaultPatternSeed;
  std::string mode = "batch";
};

void add_common_flags(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--threshold", f.threshold, "FAST intensity threshold")
      ->check(CLI::Range(0, 255));
  cmd.add_option("--wordlen", f.wordlen, "moment word length 1..20 or 'full'");
  cmd.add_option("--pairs", f.pairs, "BRIEF pair count")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.seed, "sampling pattern seed");
  cmd.add_option("--mode", f.mode, "execution mode")
      ->check(CLI::IsMember({"batch", "stream"}));
}

/// Thrown for flag values CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<int> parse_wordlen(const std::string& text) {
  if (text == "full") return std::nullopt;
  int value = 0;
  std::size_t used = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--wordlen expects 1..20 or 'full', got '" + text + "'");
  }
  if (used != text.size() || value < 1 || value > kMomentMagnitudeBits) {
    throw UsageError("--wordlen expects 1..20 or 'full', got '" + text + "'");
  }
  return value;
}

ExtractParams to_params(const CommonFlags& f) {
  ExtractParams p;
  p.threshold = f.threshold;
  p.wordlen = parse_wordlen(f.wordlen);
  p.pairs = f.pairs;
  p.seed = f.seed;
  return p;
}

Mode to_mode(const CommonFlags& f) { return f.mode == "stream" ? Mode::kStream : Mode::kBatch; }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw IoError("write failed: " + path);
}

struct ExtractRun {
  ExtractionResult result;
  std::optional<StreamRunResult> stream;
};

ExtractRun extract(const Image& image, const ExtractParams& params,
                   std::span<const PatternPair> pattern, Mode mode,
                   StreamOptions options = {}) {
  const Pyramid pyramid = build_pyramid(image);
  ExtractRun run;
  if (mode == Mode::kBatch) {
    run.result = extract_batch(pyramid, params, pattern);
  } else {
    run.stream = run_stream(pyramid, params, pattern, options);
    run.result = run.stream->extraction;
  }
  return run;
}

// ---------------------------------------------------------------------------

struct ExtractFlags {
  CommonFlags common;
  std::string input;
  std::string output;
  std::string format = "json";
  std::string trace;
  std::size_t max_features = 0;
};

int cmd_extract(const ExtractFlags& f, std::ostream& out) {
  const ExtractParams params = to_params(f.common);
  const Mode mode = to_mode(f.common);
  if (!f.trace.empty() && mode != Mode::kStream) {
    throw UsageError("--trace requires --mode stream");
  }
  const Image image = read_pgm(f.input);
  const auto pattern = generate_pattern(params.pairs, params.seed);

  StreamOptions options;
  options.trace = !f.trace.empty();
  ExtractRun run = extract(image, params, pattern, mode, options);

  RunMetadata meta{image.width(), image.height(), params, mode, std::nullopt};
  if (f.max_features > 0) {
    meta.max_features = f.max_features;
    if (run.result.features.size() > f.max_features) {
      run.result.features.resize(f.max_features);
    }
  }

  std::string text;
  if (f.format == "csv") {
    text = to_csv(run.result);
  } else {
    nlohmann::json doc = to_json(run.result, meta);
    if (run.stream) {
      doc["stream"] = {
          {"cycles", run.stream->cycles},
          {"stall_cycles", run.stream->stall_cycles},
          {"stall_events", run.stream->stall_events},
          {"queue_high_water", run.stream->queue_high_water},
          {"peak_buffer_bytes", run.stream->peak_buffer_bytes},
          {"buffer_capacity_bytes", run.stream->buffer_capacity_bytes},
      };
    }
    text = doc.dump(2) + "\n";
  }
  emit(text, f.output, out);
  if (!f.trace.empty()) emit(format_trace_csv(run.stream->trace), f.trace, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepFlags {
  std::vector<int> wordlens;
  int samples = SweepSampleSpec{}.random_pairs;
  std::uint64_t seed = SweepSampleSpec{}.seed;
  std::string output;
};

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
  std::vector<int> wordlens = f.wordlens;
  if (wordlens.empty()) {
    for (int n = 1; n <= kMomentMagnitudeBits; ++n) wordlens.push_back(n);
  }
  for (int n : wordlens) {
    if (n < 1 || n > kMomentMagnitudeBits) {
      throw UsageError("--wordlens entries must be in 1..20, got " + std::to_string(n));
    }
  }
  SweepSampleSpec spec;
  spec.random_pairs = f.samples;
  spec.seed = f.seed;
  const auto rows = wordlength_sweep(wordlens, spec);
  emit(format_sweep_csv(rows), f.output, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchFlags {
  CommonFlags common;
  std::vector<std::string> inputs;
  int iterations = 10;
  std::string output;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  const ExtractParams params = to_params(f.common);
  const Mode mode = to_mode(f.common);
  const auto pattern = generate_pattern(params.pairs, params.seed);

  std::vector<Image> images;
  for (const auto& path : f.inputs) images.push_back(read_pgm(path));

  using Clock = std::chrono::steady_clock;
  nlohmann::json reports = nlohmann::json::array();
  double total_ms = 0.0;
  std::size_t total_features = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    // Warm-up run, excluded from timing.
    std::size_t features = extract(images[i], params, pattern, mode).result.features.size();
    double elapsed_ms = 0.0;
    for (int it = 0; it < f.iterations; ++it) {
      const auto start = Clock::now();
      const auto run = extract(images[i], params, pattern, mode);
      elapsed_ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      features = run.result.features.size();
    }
    const double mean_ms = elapsed_ms / f.iterations;
    reports.push_back({
        {"input", f.inputs[i]},
        {"width", images[i].width()},
        {"height", images[i].height()},
        {"frames", f.iterations},
        {"mean_ms", mean_ms},
        {"fps", mean_ms > 0.0 ? 1000.0 / mean_ms : 0.0},
        {"features", features},
    });
    total_ms += elapsed_ms;
    total_features += features;
  }

  const int frames = f.iterations * static_cast<int>(images.size());
  const double mean_ms = total_ms / frames;
  nlohmann::json doc = {
      {"label", kBenchLabel},
      {"mode", mode_name(mode)},
      {"frames", frames},
      {"mean_ms", mean_ms},
      {"fps", mean_ms > 0.0 ? 1000.0 / mean_ms : 0.0},
      {"features", total_features},
      {"reports", reports},
  };
  emit(doc.dump(2) + "\n", f.output, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MemreportFlags {
  std::string dims;
  bool json = false;
  std::string output;
};

int cmd_memreport(const MemreportFlags& f, std::ostream& out) {
  static const std::regex kDims(R"((\d{1,6})x(\d{1,6}))");
  std::smatch m;
  if (!std::regex_match(f.dims, m, kDims)) {
    throw UsageError("--dims expects WIDTHxHEIGHT, got '" + f.dims + "'");
  }
  const int width = std::stoi(m[1]);
  const int height = std::stoi(m[2]);
  MemoryReport report;
  try {
    report = memory_report_for_frame(width, height);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --dims: ") + e.what());
  }

  if (f.json) {
    emit(to_json(report).dump(2) + "\n", f.output, out);
    return kExitOk;
  }
  std::ostringstream text;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& l = report.levels[i];
    text << "level " << i << " " << l.dims.width << "x" << l.dims.height
         << ": LB1 " << l.lb1 << ", LB2 " << l.lb2 << ", LB3 " << l.lb3
         << ", RB1+RB2+RB3 " << l.register_banks << ", smoothed frame "
         << l.smoothed_frame << "\n";
  }
  text << "streaming_bytes        " << report.streaming_bytes << "\n"
       << "baseline_bytes         " << report.baseline_bytes << "\n"
       << "savings_bytes          " << report.savings_bytes
       << (report.savings_bytes <= 0 ? "  (no saving at this size)" : "") << "\n"
       << "published savings      " << kPublishedSavingsText << " = "
       << kPublishedSavingsBytes << " bytes (1K = 1024)\n"
       << "formula                " << report.formula << "\n";
  emit(text.str(), f.output, out);
  return kExitOk;
}

}  // namespace

nlohmann::json to_json(const ExtractionResult& result, const RunMetadata& meta) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : result.levels) {
    levels.push_back({{"width", l.width}, {"height", l.height}, {"features", l.features}});
  }
  nlohmann::json metadata = {
      {"image", {{"width", meta.width}, {"height", meta.height}}},
      {"levels", levels},
      {"threshold", meta.params.threshold},
      {"pairs", meta.params.pairs},
      {"seed", meta.params.seed},
      {"mode", mode_name(meta.mode)},
  };
  if (meta.params.wordlen) {
    metadata["wordlen"] = *meta.params.wordlen;
  } else {
    metadata["wordlen"] = "full";
  }
  if (meta.max_features) metadata["max_features"] = *meta.max_features;

  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : result.features) {
    features.push_back({
        {"level", f.point.at.level},
        {"x", f.point.at.x},
        {"y", f.point.at.y},
        {"sin", f.point.orientation.sin},
        {"cos", f.point.orientation.cos},
        {"descriptor", f.descriptor.to_hex()},
    });
  }
  return {{"metadata", metadata}, {"features", features}};
}

std::string to_csv(const ExtractionResult& result) {
  std::string out = "level,x,y,sin,cos,descriptor\n";
  char buf[96];
  for (const auto& f : result.features) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.9f,%.9f,", f.point.at.level,
                  f.point.at.x, f.point.at.y, f.point.orientation.sin,
                  f.point.orientation.cos);
    out += buf;
    out += f.descriptor.to_hex();
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const MemoryReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels) {
    levels.push_back({
        {"width", l.dims.width},
        {"height", l.dims.height},
        {"lb1_bytes", l.lb1},
        {"lb2_bytes", l.lb2},
        {"lb3_bytes", l.lb3},
        {"register_bank_bytes", l.register_banks},
        {"smoothed_frame_bytes", l.smoothed_frame},
    });
  }
  return {
      {"streaming_bytes", report.streaming_bytes},
      {"baseline_bytes", report.baseline_bytes},
      {"savings_bytes", report.savings_bytes},
      {"paper_reference_bytes", kPublishedSavingsBytes},
      {"paper_reference_text", kPublishedSavingsText},
      {"formula", report.formula},
      {"levels", levels},
  };
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ORB feature extraction with a streaming line-buffer model", "orbstream"};
  app.require_subcommand(1);

  ExtractFlags extract_flags;
  auto* extract_cmd = app.add_subcommand("extract", "detect and describe features in a PGM image");
  extract_cmd->add_option("input", extract_flags.input, "binary PGM (P5) input")->required();
  add_common_flags(*extract_cmd, extract_flags.common);
  extract_cmd->add_option("-o,--output", extract_flags.output, "output path (default stdout)");
  extract_cmd->add_option("--format", extract_flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  extract_cmd->add_option("--max-features", extract_flags.max_features,
                          "keep only the first N features in (level, y, x) order");
  extract_cmd->add_option("--trace", extract_flags.trace,
                          "stream mode: write the cycle trace CSV here");

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "word-length truncation error sweep");
  sweep_cmd->add_option("--wordlens", sweep_flags.wordlens, "comma-separated word lengths")
      ->delimiter(',');
  sweep_cmd->add_option("--samples", sweep_flags.samples, "random moment pairs added to the grid")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--seed", sweep_flags.seed, "random sample seed");
  sweep_cmd->add_option("-o,--output", sweep_flags.output, "CSV output path (default stdout)");

  BenchFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "software timing of the extractor");
  bench_cmd->add_option("inputs", bench_flags.inputs, "PGM frames")->required();
  add_common_flags(*bench_cmd, bench_flags.common);
  bench_cmd->add_option("--iterations", bench_flags.iterations, "timed frames per input (>= 10)")
      ->check(CLI::Range(10, 1000000));
  bench_cmd->add_option("-o,--output", bench_flags.output, "output path (default stdout)");

  MemreportFlags mem_flags;
  auto* mem_cmd = app.add_subcommand("memreport", "on-chip buffer accounting");
  mem_cmd->add_option("--dims", mem_flags.dims, "level-0 frame size, e.g. 640x480")->required();
  mem_cmd->add_flag("--json", mem_flags.json, "emit JSON");
  mem_cmd->add_option("-o,--output", mem_flags.output, "output path (default stdout)");

  std::vector<const char*> argv{"orbstream"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*extract_cmd) return cmd_extract(extract_flags, out);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, out);
    if (*bench_cmd) return cmd_bench(bench_flags, out);
    if (*mem_cmd) return cmd_memreport(mem_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const PgmError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace orbstream::cli
