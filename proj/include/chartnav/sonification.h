#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chartnav/chart_model.h"
#include "chartnav/semantic_tree.h"

namespace chartnav {

struct Timbre {
  enum class Kind { kDefault, kSeries, kNumb };
  Kind kind = Kind::kDefault;
  std::size_t series = 0;  // kSeries only

  static Timbre Default() { return {}; }
  static Timbre Series(std::size_t s) { return {Kind::kSeries, s}; }
  static Timbre Numb() { return {Kind::kNumb, 0}; }

  // "default", "series_<k>" or "numb".
  std::string ToString() const;
  static Timbre Parse(const std::string& text);

  friend bool operator==(const Timbre&, const Timbre&) = default;
};

struct ToneSpec {
  double pitch_hz = 0.0;
  double duration_ms = 0.0;
  Timbre timbre;
  double gap_after_ms = 0.0;

  bool is_numb() const { return timbre.kind == Timbre::Kind::kNumb; }
  friend bool operator==(const ToneSpec&, const ToneSpec&) = default;
};

struct SonificationConfig {
  double pitch_lo_hz = 220.0;   // A3
  double pitch_hi_hz = 1760.0;  // A6
  double duration_lo_ms = 80.0;
  double duration_hi_ms = 400.0;
  double default_duration_ms = 200.0;
  double sequence_gap_ms = 60.0;
  double numb_pitch_hz = 160.0;
  double numb_duration_ms = 40.0;

  void Validate() const;
};

// Exponential interpolation between the configured pitch bounds, so equal
// value steps are equal musical intervals. v is clamped into range; a
// degenerate range maps everything to the top pitch.
double PitchForValue(double v, const Interval& range, const SonificationConfig& cfg = {});

ToneSpec NumbTone(const SonificationConfig& cfg = {});

// Count 0 gives the numb tone. Otherwise pitch and duration both grow with
// count relative to max_count.
ToneSpec ToneForCell(std::size_t count, std::size_t max_count, std::size_t series_index,
                     const SonificationConfig& cfg = {});

// One tone per cell of the bin's subtree for `series`, first cell (bottom of
// an x bin) first. Throws TreeError when the bin has no such subtree.
std::vector<ToneSpec> BinToneSequence(const SemanticTree& tree, NodeId bin,
                                      std::size_t series_index,
                                      const SonificationConfig& cfg = {});

// Line/bar: pitch of the series mean over the y range. Scatter: pitch and
// duration from the series' share of all points.
ToneSpec SeriesOverviewTone(std::size_t series_index, const ChartModel& model,
                            const SonificationConfig& cfg = {});

}  // namespace chartnav
