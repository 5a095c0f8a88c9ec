#include "chartnav/dtm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chartnav {
namespace {

double PointToSegment(ScreenPoint p, ScreenPoint a, ScreenPoint b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double PointToRect(ScreenPoint p, double left, double top, double right, double bottom) {
  const double dx = std::max({left - p.x, 0.0, p.x - right});
  const double dy = std::max({top - p.y, 0.0, p.y - bottom});
  return std::hypot(dx, dy);
}

bool StrictlyMonotone(int a, int b, int c) { return (a < b && b < c) || (a > b && b > c); }

}  // namespace

void DtmConfig::Validate() const {
  if (radius_cover_distance < 1) throw std::invalid_argument("radius_cover_distance must be >= 1");
  if (!(min_rad_px > 0 && min_rad_px <= max_rad_px)) {
    throw std::invalid_argument("radii must satisfy 0 < min_rad <= max_rad");
  }
  if (hit_tolerance_px < 0) throw std::invalid_argument("hit_tolerance_px must be >= 0");
  if (min_interval_ms < 0) throw std::invalid_argument("min_interval_ms must be >= 0");
  if (step_low_hz <= 0 || step_high_hz <= 0 || step_note_ms <= 0) {
    throw std::invalid_argument("step tone constants must be positive");
  }
}

ScanState ScanState::FromConfig(const DtmConfig& cfg) {
  ScanState s;
  s.radius_cover_distance = cfg.radius_cover_distance;
  s.min_rad = cfg.min_rad_px;
  s.max_rad = cfg.max_rad_px;
  return s;
}

ScanResult ScanUpdate(const ScanState& scan, ScreenPoint pos, std::span<const ScanTarget> points) {
  ScanResult result;
  result.next = scan;
  result.next.indices_within_radius.clear();
  if (points.empty()) {
    result.adjusted_radius = scan.min_rad;
    return result;
  }

  std::vector<std::pair<double, PointId>> sorted;
  sorted.reserve(points.size());
  for (const ScanTarget& t : points) {
    sorted.emplace_back(std::hypot(t.pos.x - pos.x, t.pos.y - pos.y), t.id);
  }
  std::sort(sorted.begin(), sorted.end());

  const std::size_t cover = std::clamp<std::size_t>(scan.radius_cover_distance, 1, sorted.size());
  const double raw_radius = sorted[cover - 1].first;
  result.adjusted_radius = std::clamp(raw_radius, scan.min_rad, scan.max_rad);

  std::vector<PointId> hits;
  for (const auto& [distance, id] : sorted) {
    if (distance > result.adjusted_radius) break;
    hits.push_back(id);
  }
  std::sort(hits.begin(), hits.end());
  std::set_difference(hits.begin(), hits.end(), scan.indices_within_radius.begin(),
                      scan.indices_within_radius.end(), std::back_inserter(result.newly_hit));
  result.haptic_count = result.newly_hit.size();
  result.next.indices_within_radius = std::move(hits);
  return result;
}

std::pair<bool, ThrottleState> ThrottleGate(const ThrottleState& t, std::int64_t now_ms) {
  if (t.last_emit_ms && now_ms - *t.last_emit_ms < t.min_interval_ms) return {false, t};
  ThrottleState next = t;
  next.last_emit_ms = now_ms;
  return {true, next};
}

LockResult LockUpdate(const LockState& lock, GridCell cell) {
  LockResult result{std::nullopt, lock};
  LockState& next = result.next;
  if (!next.recent_cells.empty() && next.recent_cells.back() == cell) return result;

  if (lock.phase == LockPhase::kLocked) {
    const bool horizontal = lock.direction == LockDirection::kHorizontal;
    const int line = horizontal ? cell.row : cell.col;
    if (line == lock.locked_line) {
      next.recent_cells.push_back(cell);
      if (next.recent_cells.size() > 3) next.recent_cells.erase(next.recent_cells.begin());
      return result;
    }
    if (horizontal) {
      result.step = line < lock.locked_line ? StepTone::kUp : StepTone::kDown;
    } else {
      result.step = line > lock.locked_line ? StepTone::kUp : StepTone::kDown;
    }
    next.phase = LockPhase::kArmed;
    next.recent_cells = {cell};
    return result;
  }

  next.recent_cells.push_back(cell);
  if (next.recent_cells.size() > 3) next.recent_cells.erase(next.recent_cells.begin());
  if (next.recent_cells.size() == 3) {
    const GridCell& a = next.recent_cells[0];
    const GridCell& b = next.recent_cells[1];
    const GridCell& c = next.recent_cells[2];
    if (a.row == b.row && b.row == c.row && StrictlyMonotone(a.col, b.col, c.col)) {
      next.phase = LockPhase::kLocked;
      next.direction = LockDirection::kHorizontal;
      next.locked_line = a.row;
    } else if (a.col == b.col && b.col == c.col && StrictlyMonotone(a.row, b.row, c.row)) {
      next.phase = LockPhase::kLocked;
      next.direction = LockDirection::kVertical;
      next.locked_line = a.col;
    }
  }
  return result;
}

std::vector<ToneSpec> StepToneSequence(StepTone step, const DtmConfig& cfg) {
  ToneSpec low{cfg.step_low_hz, cfg.step_note_ms, Timbre::Default(), 0.0};
  ToneSpec high{cfg.step_high_hz, cfg.step_note_ms, Timbre::Default(), 0.0};
  if (step == StepTone::kUp) return {low, high};
  return {high, low};
}

GridCell CellAt(ScreenPoint pos, ScreenSize screen, std::size_t cols, std::size_t rows) {
  auto index = [](double v, int extent, std::size_t count) {
    const double f = std::floor(v / extent * static_cast<double>(count));
    return static_cast<int>(std::clamp(f, 0.0, static_cast<double>(count - 1)));
  };
  return {index(pos.x, screen.width, cols), index(pos.y, screen.height, rows)};
}

Viewport ApplyPinch(const Viewport& vp, double scale, ScreenPoint focus, ScreenSize screen,
                    const Viewport& full) {
  if (!(scale > 0.0) || scale == 1.0 || !std::isfinite(scale)) return vp;
  const double fx = std::clamp(focus.x / screen.width, 0.0, 1.0);
  const double fy = std::clamp(focus.y / screen.height, 0.0, 1.0);

  auto shift_into = [](Interval iv, const Interval& bounds) {
    if (iv.lo < bounds.lo) {
      iv.hi += bounds.lo - iv.lo;
      iv.lo = bounds.lo;
    }
    if (iv.hi > bounds.hi) {
      iv.lo -= iv.hi - bounds.hi;
      iv.hi = bounds.hi;
    }
    iv.lo = std::max(iv.lo, bounds.lo);
    return iv;
  };

  // Deep zoom stops at a millionth of the full range so spans stay
  // representable.
  constexpr double kMinSpanFraction = 1e-6;
  Viewport out;
  const double x_span = std::max(vp.x.span() / scale, full.x.span() * kMinSpanFraction);
  if (x_span >= full.x.span()) {
    out.x = full.x;
  } else {
    const double anchor = vp.x.lo + fx * vp.x.span();
    const double lo = anchor - fx * x_span;
    out.x = shift_into({lo, lo + x_span}, full.x);
  }
  const double y_span = std::max(vp.y.span() / scale, full.y.span() * kMinSpanFraction);
  if (y_span >= full.y.span()) {
    out.y = full.y;
  } else {
    // Screen y grows downward, so the anchor fraction is measured from hi.
    const double anchor = vp.y.hi - fy * vp.y.span();
    const double hi = anchor + fy * y_span;
    out.y = shift_into({hi - y_span, hi}, full.y);
  }
  return out;
}

std::optional<PointId> NearestByX(const ChartModel& model, std::size_t series, double x) {
  std::optional<PointId> best;
  double best_distance = std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  for (PointId id : model.SeriesPoints(series)) {
    const double px = model.point(id).x;
    const double d = std::abs(px - x);
    if (d < best_distance || (d == best_distance && px < best_x)) {
      best = id;
      best_distance = d;
      best_x = px;
    }
  }
  return best;
}

double BarHalfWidth(const ChartModel& model, std::size_t series) {
  const auto ids = model.SeriesPoints(series);
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const double gap = model.point(ids[i]).x - model.point(ids[i - 1]).x;
    if (gap > 0) spacing = std::min(spacing, gap);
  }
  if (!std::isfinite(spacing)) spacing = 1.0;
  return 0.4 * spacing;
}

double DistanceToSeries(const ChartModel& model, std::size_t series, const Viewport& vp,
                        ScreenSize screen, ScreenPoint pos) {
  const auto ids = model.SeriesPoints(series);
  double best = std::numeric_limits<double>::infinity();
  if (ids.empty()) return best;

  if (model.kind() == ChartKind::kBar) {
    const double half = BarHalfWidth(model, series);
    const double base = std::clamp(0.0, model.y_range().lo, model.y_range().hi);
    for (PointId id : ids) {
      const DataPoint& p = model.point(id);
      const ScreenPoint a = DataToScreen({p.x - half, std::max(p.y, base)}, vp, screen);
      const ScreenPoint b = DataToScreen({p.x + half, std::min(p.y, base)}, vp, screen);
      best = std::min(best, PointToRect(pos, a.x, a.y, b.x, b.y));
    }
    return best;
  }

  ScreenPoint prev = DataToScreen({model.point(ids[0]).x, model.point(ids[0]).y}, vp, screen);
  if (ids.size() == 1) return std::hypot(pos.x - prev.x, pos.y - prev.y);
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const DataPoint& p = model.point(ids[i]);
    const ScreenPoint cur = DataToScreen({p.x, p.y}, vp, screen);
    best = std::min(best, PointToSegment(pos, prev, cur));
    prev = cur;
  }
  return best;
}

ProjectResult ProjectToX(const ChartModel& model, std::size_t series, const Viewport& vp,
                         ScreenSize screen, ScreenPoint pos, const ThrottleState& throttle,
                         std::int64_t now_ms, const DtmConfig& cfg,
                         const SonificationConfig& sound) {
  ProjectResult result;
  result.throttle = throttle;
  const DataCoord data = ScreenToData(pos, vp, screen);
  result.nearest = NearestByX(model, series, data.x);
  if (!result.nearest) return result;

  auto [allowed, next] = ThrottleGate(throttle, now_ms);
  result.throttle = next;
  if (!allowed) return result;

  const DataPoint& p = model.point(*result.nearest);
  ToneSpec tone;
  tone.pitch_hz = PitchForValue(p.y, model.y_range(), sound);
  tone.duration_ms = static_cast<double>(std::max<std::int64_t>(cfg.min_interval_ms, 1));
  tone.timbre = Timbre::Series(series);
  result.tone = tone;
  if (DistanceToSeries(model, series, vp, screen, pos) <= cfg.hit_tolerance_px) {
    result.haptic_pulses = 1;
  }
  return result;
}

std::string SplitTapInfo(const Narrator& narrator, const ChartModel& model, const Viewport& vp,
                         ScreenSize screen, ScreenPoint pos, std::optional<std::size_t> series,
                         double axis_strip_px) {
  const DataCoord data = ScreenToData(pos, vp, screen);
  if (pos.y >= screen.height - axis_strip_px) return "X axis, " + narrator.FormatX(data.x);
  if (pos.x <= axis_strip_px) return "Y axis, " + narrator.FormatY(data.y);
  std::string text = narrator.FormatX(data.x) + ", " + narrator.FormatY(data.y);
  if (series) text += ", " + model.series_name(*series);
  return text;
}

}  // namespace chartnav
