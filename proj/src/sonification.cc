#include "chartnav/sonification.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace chartnav {

std::string Timbre::ToString() const {
  switch (kind) {
    case Kind::kDefault:
      return "default";
    case Kind::kSeries:
      return "series_" + std::to_string(series);
    case Kind::kNumb:
      return "numb";
  }
  return "default";
}

Timbre Timbre::Parse(const std::string& text) {
  if (text == "default") return Default();
  if (text == "numb") return Numb();
  constexpr std::string_view kPrefix = "series_";
  if (text.starts_with(kPrefix)) {
    std::size_t s = 0;
    const char* begin = text.data() + kPrefix.size();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, s);
    if (ec == std::errc() && ptr == end && begin != end) return Series(s);
  }
  throw std::invalid_argument("unknown timbre '" + text + "'");
}

void SonificationConfig::Validate() const {
  if (!(pitch_lo_hz > 0 && pitch_lo_hz < pitch_hi_hz)) {
    throw std::invalid_argument("pitch bounds must satisfy 0 < pitch_lo < pitch_hi");
  }
  if (!(duration_lo_ms > 0 && duration_lo_ms < duration_hi_ms)) {
    throw std::invalid_argument("durations must satisfy 0 < dur_lo < dur_hi");
  }
  if (default_duration_ms <= 0 || sequence_gap_ms < 0 || numb_pitch_hz <= 0 ||
      numb_duration_ms <= 0) {
    throw std::invalid_argument("tone constants must be positive");
  }
}

double PitchForValue(double v, const Interval& range, const SonificationConfig& cfg) {
  if (!(range.lo < range.hi)) return cfg.pitch_hi_hz;
  if (v <= range.lo) return cfg.pitch_lo_hz;
  if (v >= range.hi) return cfg.pitch_hi_hz;
  const double t = (v - range.lo) / (range.hi - range.lo);
  return cfg.pitch_lo_hz * std::pow(cfg.pitch_hi_hz / cfg.pitch_lo_hz, t);
}

ToneSpec NumbTone(const SonificationConfig& cfg) {
  return {cfg.numb_pitch_hz, cfg.numb_duration_ms, Timbre::Numb(), 0.0};
}

ToneSpec ToneForCell(std::size_t count, std::size_t max_count, std::size_t series_index,
                     const SonificationConfig& cfg) {
  if (count == 0) return NumbTone(cfg);
  max_count = std::max(max_count, count);
  const double fraction = static_cast<double>(count) / static_cast<double>(max_count);
  ToneSpec tone;
  tone.pitch_hz = PitchForValue(static_cast<double>(count),
                                {1.0, static_cast<double>(max_count)}, cfg);
  tone.duration_ms = cfg.duration_lo_ms + (cfg.duration_hi_ms - cfg.duration_lo_ms) * fraction;
  tone.timbre = Timbre::Series(series_index);
  return tone;
}

std::vector<ToneSpec> BinToneSequence(const SemanticTree& tree, NodeId bin,
                                      std::size_t series_index, const SonificationConfig& cfg) {
  const auto subtree = tree.SeriesSubtree(bin, series_index);
  if (!subtree) throw TreeError("bin has no subtree for series " + std::to_string(series_index));
  const SemanticNode& series = tree.node(*subtree);
  const std::size_t max_count = std::max<std::size_t>(1, tree.max_cell_count(series.axis));
  std::vector<ToneSpec> tones;
  tones.reserve(series.children.size());
  for (NodeId cell : series.children) {
    ToneSpec tone = ToneForCell(tree.node(cell).points.size(), max_count, series_index, cfg);
    tone.gap_after_ms = cfg.sequence_gap_ms;
    tones.push_back(tone);
  }
  return tones;
}

ToneSpec SeriesOverviewTone(std::size_t series_index, const ChartModel& model,
                            const SonificationConfig& cfg) {
  if (series_index >= model.series_count()) {
    throw std::out_of_range("no series " + std::to_string(series_index));
  }
  ToneSpec tone;
  tone.timbre = Timbre::Series(series_index);
  if (model.kind() == ChartKind::kScatter) {
    const double fraction = static_cast<double>(model.SeriesSize(series_index)) /
                            static_cast<double>(model.points().size());
    tone.pitch_hz = PitchForValue(fraction, {0.0, 1.0}, cfg);
    tone.duration_ms = cfg.duration_lo_ms + (cfg.duration_hi_ms - cfg.duration_lo_ms) * fraction;
    return tone;
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (const DataPoint& p : model.points()) {
    if (p.series != series_index) continue;
    sum += p.y;
    ++n;
  }
  const double mean = n ? sum / static_cast<double>(n) : model.y_range().lo;
  tone.pitch_hz = PitchForValue(mean, model.y_range(), cfg);
  tone.duration_ms = cfg.default_duration_ms;
  return tone;
}

}  // namespace chartnav
