#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbstream/extractor.hpp"
#include "orbstream/streaming.hpp"

namespace orbstream::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

enum class Mode { kBatch, kStream };

/// Everything needed to reproduce an extraction run.
struct RunMetadata {
  int width = 0;
  int height = 0;
  ExtractParams params;
  Mode mode = Mode::kBatch;
  std::optional<std::size_t> max_features;
};

nlohmann::json to_json(const ExtractionResult& result, const RunMetadata& meta);
std::string to_csv(const ExtractionResult& result);
nlohmann::json to_json(const MemoryReport& report);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbstream::cli
