#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartnav/chart_model.h"
#include "chartnav/events.h"
#include "chartnav/interaction.h"

namespace chartnav {

inline constexpr int kFormatVersion = 1;

// Bad config, trace or transcript documents. `index` is the offending event
// or record when there is one.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what, long index = -1)
      : std::runtime_error(what), index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

struct SessionConfig {
  std::string csv_path;           // as written in the document
  std::filesystem::path base_dir; // csv_path is resolved against this
  ChartSpec chart;
  EngineConfig engine;

  std::filesystem::path ResolvedCsvPath() const;
};

// Strict: unknown keys and wrong types are errors.
SessionConfig ParseSessionConfig(std::string_view text, const std::filesystem::path& base_dir);
SessionConfig LoadSessionConfig(const std::filesystem::path& path);

// Every field with defaults filled in, so documents that differ only in
// spelled-out defaults serialize (and hash) the same.
nlohmann::json ToJson(const SessionConfig& config);
// 16 hex digits of FNV-1a 64 over the canonical dump.
std::string ConfigHash(const SessionConfig& config);

ChartModel LoadModel(const SessionConfig& config);
std::shared_ptr<const Engine> BuildEngine(const SessionConfig& config);

// Reads a whole file; throws std::runtime_error naming the path.
std::string ReadFile(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Events and feedback as JSON

nlohmann::json ToJson(const InputEvent& event);
// Throws FormatError for unknown kinds or fields that do not fit the kind.
InputEvent EventFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const ToneSpec& tone);
ToneSpec ToneFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const FeedbackEvent& feedback);
FeedbackEvent FeedbackFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const std::vector<FeedbackEvent>& batch);

nlohmann::json ToJson(const Geometry& geometry);

// ---------------------------------------------------------------------------
// Traces

struct Trace {
  std::string config_hash;
  std::vector<InputEvent> events;
};

Trace ParseTrace(std::string_view text);
std::string SerializeTrace(const Trace& trace);

// ---------------------------------------------------------------------------
// Transcripts

struct TranscriptRecord {
  long seq = 0;  // -1 for the session-open batch
  std::vector<FeedbackEvent> feedback;
  friend bool operator==(const TranscriptRecord&, const TranscriptRecord&) = default;
};

struct Transcript {
  std::string config_hash;
  std::vector<TranscriptRecord> records;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// One JSON object per line with sorted keys: a header line, then one line
// per record.
std::string SerializeTranscript(const Transcript& transcript);
Transcript ParseTranscript(std::string_view text);

// Feeds every event through a fresh session. Throws FormatError when the
// trace was recorded against another config, unless `force` is set.
Transcript ReplayTrace(const Engine& engine, const std::string& config_hash, const Trace& trace,
                       bool force = false);

// ---------------------------------------------------------------------------
// Rendering

// Chart marks for the full viewport plus one <path> per touch stroke,
// coloured from blue (early) to red (late).
std::string RenderTraceSvg(const Engine& engine, const Trace& trace);

// Semantic tree as indented text, one node per line, down to `max_depth`
// (the root is depth 0; negative means no limit).
std::string DescribeTree(const Engine& engine, int max_depth = -1);

}  // namespace chartnav
