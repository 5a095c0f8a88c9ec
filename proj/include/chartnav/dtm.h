#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chartnav/chart_model.h"
#include "chartnav/narration.h"
#include "chartnav/sonification.h"

namespace chartnav {

struct DtmConfig {
  std::size_t radius_cover_distance = 3;
  double min_rad_px = 12.0;
  double max_rad_px = 48.0;
  double hit_tolerance_px = 16.0;
  std::int64_t min_interval_ms = 80;
  double step_low_hz = 880.0;
  double step_high_hz = 1175.0;
  double step_note_ms = 60.0;

  void Validate() const;
};

// ---------------------------------------------------------------------------
// Dynamic scanning radius

struct ScanTarget {
  PointId id;
  ScreenPoint pos;
};

struct ScanState {
  std::vector<PointId> indices_within_radius;  // sorted ascending
  std::size_t radius_cover_distance = 3;
  double min_rad = 12.0;
  double max_rad = 48.0;

  static ScanState FromConfig(const DtmConfig& cfg);
  friend bool operator==(const ScanState&, const ScanState&) = default;
};

struct ScanResult {
  std::size_t haptic_count = 0;
  std::vector<PointId> newly_hit;  // sorted ascending
  double adjusted_radius = 0.0;
  ScanState next;
};

// The fingertip is a circular window whose radius reaches the
// radius_cover_distance-th nearest point, clamped to [min_rad, max_rad].
// Points entering the window since the previous call each fire one pulse.
ScanResult ScanUpdate(const ScanState& scan, ScreenPoint pos, std::span<const ScanTarget> points);

// ---------------------------------------------------------------------------
// Throttling

struct ThrottleState {
  std::optional<std::int64_t> last_emit_ms;
  std::int64_t min_interval_ms = 80;
  friend bool operator==(const ThrottleState&, const ThrottleState&) = default;
};

// Allowed iff at least min_interval has passed since the last emission; an
// allowed call records `now`. Suppressed emissions are dropped.
std::pair<bool, ThrottleState> ThrottleGate(const ThrottleState& t, std::int64_t now_ms);

// ---------------------------------------------------------------------------
// Directional lock

struct GridCell {
  int col = 0;
  int row = 0;  // 0 is the top row on screen
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

enum class LockPhase { kUnlocked, kArmed, kLocked };
enum class LockDirection { kHorizontal, kVertical };

struct LockState {
  LockPhase phase = LockPhase::kUnlocked;
  LockDirection direction = LockDirection::kHorizontal;
  // Row (horizontal) or column (vertical) of the locked line.
  int locked_line = 0;
  std::vector<GridCell> recent_cells;  // at most three, oldest first
  friend bool operator==(const LockState&, const LockState&) = default;
};

enum class StepTone { kUp, kDown };

struct LockResult {
  std::optional<StepTone> step;
  LockState next;
};

// Three consecutive distinct cells on one row with strictly monotone columns
// lock horizontally (columns and rows swapped for vertical). While locked
// horizontally, leaving the row upward gives a step-up tone and downward a
// step-down tone; while locked vertically, drifting right is step-up and left
// is step-down. A deviation drops to kArmed and the lock is rebuilt from the
// deviating cell.
LockResult LockUpdate(const LockState& lock, GridCell cell);

// Two-note pair: rising for kUp, falling for kDown.
std::vector<ToneSpec> StepToneSequence(StepTone step, const DtmConfig& cfg = {});

// Cell of a cols x rows grid over the screen containing pos (clamped).
GridCell CellAt(ScreenPoint pos, ScreenSize screen, std::size_t cols, std::size_t rows);

// ---------------------------------------------------------------------------
// Pinch zoom

// Divides both viewport spans by `scale`, keeping the data coordinate under
// `focus` fixed, then clamps into `full`. Zooming out past `full` yields it.
Viewport ApplyPinch(const Viewport& vp, double scale, ScreenPoint focus, ScreenSize screen,
                    const Viewport& full);

// ---------------------------------------------------------------------------
// Line and bar projection

struct ProjectResult {
  std::optional<ToneSpec> tone;
  int haptic_pulses = 0;
  std::optional<PointId> nearest;
  ThrottleState throttle;
};

// Half the drawn bar width in data units: 0.4 of the smallest x spacing in
// the series (0.4 for a single bar).
double BarHalfWidth(const ChartModel& model, std::size_t series);

// Screen distance from pos to the drawn series: the polyline for line charts,
// the nearest bar rectangle for bar charts.
double DistanceToSeries(const ChartModel& model, std::size_t series, const Viewport& vp,
                        ScreenSize screen, ScreenPoint pos);

// Finger x projected onto the data x axis; the nearest point of `series` by
// x (ties to the smaller x) is sonified when the throttle allows, with one
// haptic pulse when the finger touches the drawn element.
ProjectResult ProjectToX(const ChartModel& model, std::size_t series, const Viewport& vp,
                         ScreenSize screen, ScreenPoint pos, const ThrottleState& throttle,
                         std::int64_t now_ms, const DtmConfig& cfg = {},
                         const SonificationConfig& sound = {});

// Nearest point of `series` by x; ties resolve to the smaller x.
std::optional<PointId> NearestByX(const ChartModel& model, std::size_t series, double x);

// ---------------------------------------------------------------------------
// Split tap

// "<X>, <Y>, <series>" for the data position under the finger. Over the x
// axis strip (bottom `axis_strip_px`) or y axis strip (left) it narrates that
// axis value instead.
std::string SplitTapInfo(const Narrator& narrator, const ChartModel& model, const Viewport& vp,
                         ScreenSize screen, ScreenPoint pos, std::optional<std::size_t> series,
                         double axis_strip_px);

}  // namespace chartnav
