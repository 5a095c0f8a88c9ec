#include "chartnav/interaction.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chartnav {

std::string_view ToString(Mode mode) { return mode == Mode::kSnf ? "snf" : "dtm"; }

void EngineConfig::Validate() const {
  if (grid) grid->Validate();
  if (screen.width <= 0 || screen.height <= 0) {
    throw std::invalid_argument("screen dimensions must be positive");
  }
  if (min_touch_px <= 0) throw std::invalid_argument("min_touch_px must be positive");
  dtm.Validate();
  sound.Validate();
}

// Per-dispatch scratch: the evolving state, the event and the output batch.
struct Engine::Context {
  InteractionState state;
  const InputEvent& event;
  std::vector<FeedbackEvent> out;

  void Emit(FeedbackPayload payload) { out.push_back({event.time_ms, std::move(payload)}); }
  void Unavailable() { Emit(EarconCue{Earcon::kUnavailable}); }
};

std::shared_ptr<const Engine> Engine::Create(ChartModel model, EngineConfig config) {
  config.Validate();
  return std::shared_ptr<const Engine>(new Engine(std::move(model), std::move(config)));
}

Engine::Engine(ChartModel model, EngineConfig config)
    : model_(std::move(model)),
      config_(std::move(config)),
      tree_(SemanticTree::Build(model_, config_.grid.value_or(GridConfig::Defaults(model_)))),
      narrator_(model_, tree_) {
  config_.grid = tree_.grid();
}

InteractionState Engine::InitialState() const {
  InteractionState s;
  s.focus = {tree_.root(), 0, tree_.root()};
  s.filter.visible.assign(model_.series_count(), true);
  s.viewport = model_.full_viewport();
  s.dtm_entry_viewport = s.viewport;
  s.scan = ScanState::FromConfig(config_.dtm);
  s.throttle.min_interval_ms = config_.dtm.min_interval_ms;
  return s;
}

std::vector<FeedbackEvent> Engine::OpenFeedback() const {
  return {{0, Speech{narrator_.NarrateOverview()}}};
}

// ---------------------------------------------------------------------------
// Geometry helpers

std::size_t Engine::PerPage(NodeId container) const {
  return ItemsPerPage(config_.screen, config_.min_touch_px, tree_.ChildLayout(container));
}

std::size_t Engine::PageOf(NodeId node) const {
  const SemanticNode& n = tree_.node(node);
  if (!n.parent) return 0;
  return n.index / PerPage(*n.parent);
}

SnfFocus Engine::FocusOn(NodeId node) const {
  const SemanticNode& n = tree_.node(node);
  if (!n.parent) return {node, 0, node};
  return {*n.parent, PageOf(node), node};
}

PageLayout Engine::CurrentLayout(const InteractionState& state) const {
  const SemanticNode& container = tree_.node(state.focus.container);
  return LayoutPage(container.children, config_.screen, state.focus.page, config_.min_touch_px,
                    tree_.ChildLayout(state.focus.container));
}

std::vector<ScanTarget> Engine::ScanTargets(const InteractionState& state) const {
  std::vector<ScanTarget> targets;
  const auto& points = model_.points();
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    const DataPoint& p = points[i];
    if (!state.filter.is_visible(p.series)) continue;
    if (state.active_series && *state.active_series != p.series) continue;
    if (!state.viewport.x.Contains(p.x) || !state.viewport.y.Contains(p.y)) continue;
    targets.push_back({PointId{i}, DataToScreen({p.x, p.y}, state.viewport, config_.screen)});
  }
  return targets;
}

Geometry Engine::Snapshot(const InteractionState& state) const {
  Geometry g;
  g.mode = state.mode;
  g.viewport = state.viewport;
  if (state.mode == Mode::kSnf) {
    g.layout = CurrentLayout(state);
  } else {
    g.points = ScanTargets(state);
  }
  return g;
}

Interval Engine::FocusXInterval(NodeId node) const {
  const SemanticNode& n = tree_.node(node);
  std::optional<NodeId> bin = tree_.EnclosingBin(node);
  if (!bin && n.level == NodeLevel::kPoint) {
    bin = tree_.BinContaining(Axis::kX, model_.point(n.points.at(0)).x);
  }
  if (!bin || tree_.node(*bin).axis != Axis::kX) return model_.x_range();

  const SemanticNode& b = tree_.node(*bin);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (PointId id : b.points) {
    lo = std::min(lo, model_.point(id).x);
    hi = std::max(hi, model_.point(id).x);
  }
  // Zoom to the data the bin holds; fall back to its interval when that
  // would be empty or a single x value.
  if (lo < hi) return {lo, hi};
  return b.x_interval;
}

std::optional<std::size_t> Engine::DtmSeries(const InteractionState& state) const {
  if (state.active_series && state.filter.is_visible(*state.active_series)) {
    return state.active_series;
  }
  for (std::size_t s = 0; s < model_.series_count(); ++s) {
    if (state.filter.is_visible(s)) return s;
  }
  return std::nullopt;
}

ToneSpec Engine::PointTone(const DataPoint& p) const {
  ToneSpec tone;
  tone.pitch_hz = PitchForValue(p.y, model_.y_range(), config_.sound);
  tone.duration_ms = config_.sound.default_duration_ms;
  tone.timbre = Timbre::Series(p.series);
  return tone;
}

// ---------------------------------------------------------------------------
// Feedback for a focused node

std::optional<FeedbackPayload> Engine::Sonify(const InteractionState& state, NodeId id) const {
  const SemanticNode& n = tree_.node(id);
  const SonificationConfig& sound = config_.sound;
  auto sequence = [&](std::vector<ToneSpec> tones) -> FeedbackPayload {
    for (ToneSpec& t : tones) t.gap_after_ms = sound.sequence_gap_ms;
    return ToneSequence{std::move(tones)};
  };
  auto wanted = [&](std::size_t series) {
    return state.filter.is_visible(series) &&
           (!state.active_series || *state.active_series == series);
  };

  switch (n.level) {
    case NodeLevel::kOverview: {
      std::vector<ToneSpec> tones;
      for (std::size_t s = 0; s < model_.series_count(); ++s) {
        if (wanted(s)) tones.push_back(SeriesOverviewTone(s, model_, sound));
      }
      if (tones.empty()) return std::nullopt;
      return sequence(std::move(tones));
    }
    case NodeLevel::kBin: {
      if (tree_.kind() == ChartKind::kScatter) {
        if (state.active_series && state.filter.is_visible(*state.active_series)) {
          return sequence(BinToneSequence(tree_, id, *state.active_series, sound));
        }
        const std::size_t max_count =
            *std::max_element(n.series_counts.begin(), n.series_counts.end());
        std::vector<ToneSpec> tones;
        for (std::size_t s = 0; s < model_.series_count(); ++s) {
          if (wanted(s)) tones.push_back(ToneForCell(n.series_counts[s], max_count, s, sound));
        }
        if (tones.empty()) return std::nullopt;
        return sequence(std::move(tones));
      }
      std::vector<ToneSpec> tones;
      for (NodeId child : n.children) {
        const DataPoint& p = model_.point(tree_.node(child).points.at(0));
        if (wanted(p.series)) tones.push_back(PointTone(p));
      }
      if (tones.empty()) tones.push_back(NumbTone(sound));
      return sequence(std::move(tones));
    }
    case NodeLevel::kSeriesInBin:
      if (!state.filter.is_visible(n.series)) return std::nullopt;
      return sequence(BinToneSequence(tree_, *n.parent, n.series, sound));
    case NodeLevel::kCell:
      if (!state.filter.is_visible(n.series)) return std::nullopt;
      return Tone{ToneForCell(n.points.size(), tree_.max_cell_count(n.axis), n.series, sound)};
    case NodeLevel::kPoint: {
      const DataPoint& p = model_.point(n.points.at(0));
      if (!state.filter.is_visible(p.series)) return std::nullopt;
      return Tone{PointTone(p)};
    }
    case NodeLevel::kZone:
    case NodeLevel::kSeriesToggle:
      break;
  }
  return std::nullopt;
}

void Engine::EmitFocus(Context& ctx, NodeId node, MoveKind move) const {
  InteractionState& s = ctx.state;
  if (s.sonification_on) {
    if (auto sonic = Sonify(s, node)) {
      ctx.Emit(std::move(*sonic));
      return;
    }
  }
  if (move == MoveKind::kRepeat) {
    if (auto it = s.repeat_cache.find(node); it != s.repeat_cache.end()) {
      ctx.Emit(Speech{it->second});
      return;
    }
  }
  std::string text = narrator_.Narrate(node, move, s.filter);
  s.repeat_cache[node] = text;
  ctx.Emit(Speech{std::move(text)});
}

// ---------------------------------------------------------------------------
// Dispatch

Transition Engine::Dispatch(InteractionState state, const InputEvent& event) const {
  Context ctx{std::move(state), event, {}};
  if (ctx.state.mode == Mode::kSnf) {
    HandleSnf(ctx);
  } else {
    HandleDtm(ctx);
  }
  return {std::move(ctx.state), std::move(ctx.out)};
}

void Engine::HandleSnf(Context& ctx) const {
  const InputEvent& e = ctx.event;
  switch (e.kind) {
    case EventKind::kTouchDown:
    case EventKind::kTouchMove:
      SnfTouch(ctx);
      return;
    case EventKind::kTouchUp:
      ctx.state.finger_down = false;
      return;
    case EventKind::kSwipe:
      if (e.direction == Direction::kLeft || e.direction == Direction::kRight) {
        SnfSwipe(ctx);
      } else {
        ctx.Unavailable();
      }
      return;
    case EventKind::kDoubleTap:
      SnfDoubleTap(ctx);
      return;
    case EventKind::kZScrub:
      SnfZScrub(ctx);
      return;
    case EventKind::kThreeFingerSwipe:
      SnfPage(ctx);
      return;
    case EventKind::kDoubleTapHoldMove:
      switch (e.direction) {
        case Direction::kUp:
          JumpToZone(ctx, ZoneKind::kYAxis);
          return;
        case Direction::kDown:
          JumpToZone(ctx, ZoneKind::kXAxis);
          return;
        case Direction::kLeft:
          JumpToZone(ctx, ZoneKind::kFilters);
          return;
        case Direction::kRight:
          JumpToZone(ctx, ZoneKind::kDataPoints);
          return;
        case Direction::kHold: {
          Transition t = TransitionMode(std::move(ctx.state), e.time_ms);
          ctx.state = std::move(t.state);
          for (auto& f : t.feedback) ctx.out.push_back(std::move(f));
          return;
        }
        case Direction::kNone:
          ctx.Unavailable();
          return;
      }
      return;
    case EventKind::kRotorRotate:
    case EventKind::kRotorFlick: {
      Transition t = RotorInteract(std::move(ctx.state), e);
      ctx.state = std::move(t.state);
      for (auto& f : t.feedback) ctx.out.push_back(std::move(f));
      return;
    }
    case EventKind::kPinch:
    case EventKind::kSplitTap:
      ctx.Unavailable();
      return;
  }
  ctx.Unavailable();
}

void Engine::SnfTouch(Context& ctx) const {
  InteractionState& s = ctx.state;
  const InputEvent& e = ctx.event;
  std::optional<ScreenPoint> pos = e.position ? e.position : s.last_position;
  if (!pos || !std::isfinite(pos->x) || !std::isfinite(pos->y)) {
    ctx.Unavailable();
    return;
  }
  pos->x = std::clamp(pos->x, 0.0, static_cast<double>(config_.screen.width));
  pos->y = std::clamp(pos->y, 0.0, static_cast<double>(config_.screen.height));

  const NodeId hit = HitTest(CurrentLayout(s), *pos);
  const bool moving = e.kind == EventKind::kTouchMove && s.finger_down;
  s.finger_down = true;
  s.last_position = pos;

  if (moving && hit == s.focus.focus) {
    ctx.Emit(EarconCue{Earcon::kHold});
    return;
  }
  MoveKind move = MoveKind::kNewPosition;
  if (moving && s.focus.focus != s.focus.container) {
    const SemanticNode& prev = tree_.node(s.focus.focus);
    const SemanticNode& next = tree_.node(hit);
    const std::size_t gap = prev.index > next.index ? prev.index - next.index
                                                    : next.index - prev.index;
    if (prev.parent == next.parent && gap == 1) move = MoveKind::kAdjacent;
  }
  s.focus.focus = hit;
  EmitFocus(ctx, hit, move);
}

void Engine::SnfSwipe(Context& ctx) const {
  InteractionState& s = ctx.state;
  const bool forward = ctx.event.direction == Direction::kRight;
  const auto& kids = tree_.node(s.focus.container).children;
  if (kids.empty()) {
    ctx.Unavailable();
    return;
  }
  const std::size_t per_page = PerPage(s.focus.container);
  std::size_t target;
  MoveKind move = MoveKind::kAdjacent;
  if (s.focus.focus == s.focus.container) {
    const std::size_t first = s.focus.page * per_page;
    const std::size_t last = std::min(first + per_page, kids.size()) - 1;
    target = forward ? first : last;
    move = MoveKind::kNewPosition;
  } else {
    const std::size_t index = tree_.node(s.focus.focus).index;
    if (forward ? index + 1 >= kids.size() : index == 0) {
      ctx.Unavailable();
      return;
    }
    target = forward ? index + 1 : index - 1;
  }
  const std::size_t page = target / per_page;
  if (page != s.focus.page) ctx.Emit(EarconCue{Earcon::kPage});
  s.focus.page = page;
  s.focus.focus = kids[target];
  EmitFocus(ctx, kids[target], move);
}

void Engine::SnfDoubleTap(Context& ctx) const {
  InteractionState& s = ctx.state;
  const NodeId focus = s.focus.focus;
  const SemanticNode& n = tree_.node(focus);
  if (focus == s.focus.container) {
    EmitFocus(ctx, focus, MoveKind::kRepeat);
    return;
  }
  if (n.level == NodeLevel::kSeriesToggle) {
    Transition t = ToggleSeriesFilter(std::move(s), n.series, ctx.event.time_ms);
    s = std::move(t.state);
    for (auto& f : t.feedback) ctx.out.push_back(std::move(f));
    return;
  }
  if (!n.children.empty()) {
    s.focus = {focus, 0, n.children.front()};
    EmitFocus(ctx, n.children.front(), MoveKind::kNewPosition);
    return;
  }
  EmitFocus(ctx, focus, MoveKind::kRepeat);
}

void Engine::SnfZScrub(Context& ctx) const {
  InteractionState& s = ctx.state;
  const SemanticNode& container = tree_.node(s.focus.container);
  if (!container.parent) {
    ctx.Unavailable();
    return;
  }
  s.focus = FocusOn(container.id);
  EmitFocus(ctx, container.id, MoveKind::kNewPosition);
}

void Engine::SnfPage(Context& ctx) const {
  InteractionState& s = ctx.state;
  const auto& kids = tree_.node(s.focus.container).children;
  const std::size_t per_page = PerPage(s.focus.container);
  const std::size_t pages =
      PageCount(kids.size(), config_.screen, config_.min_touch_px,
                tree_.ChildLayout(s.focus.container));
  const bool next = ctx.event.direction == Direction::kLeft;
  if (kids.empty() || (next ? s.focus.page + 1 >= pages : s.focus.page == 0)) {
    ctx.Unavailable();
    return;
  }
  s.focus.page = next ? s.focus.page + 1 : s.focus.page - 1;
  s.focus.focus = kids[s.focus.page * per_page];
  ctx.Emit(EarconCue{Earcon::kPage});
  ctx.Emit(Speech{"Page " + std::to_string(s.focus.page + 1) + " of " + std::to_string(pages)});
  EmitFocus(ctx, s.focus.focus, MoveKind::kNewPosition);
}

void Engine::JumpToZone(Context& ctx, ZoneKind zone) const {
  ctx.state.focus = FocusOn(tree_.zone(zone));
  EmitFocus(ctx, tree_.zone(zone), MoveKind::kNewPosition);
}

Transition Engine::RotorInteract(InteractionState state, const InputEvent& event) const {
  Transition t{std::move(state), {}};
  auto say = [&](std::string text) { t.feedback.push_back({event.time_ms, Speech{std::move(text)}}); };
  if (t.state.mode != Mode::kSnf ||
      (event.kind != EventKind::kRotorRotate && event.kind != EventKind::kRotorFlick)) {
    t.feedback.push_back({event.time_ms, EarconCue{Earcon::kUnavailable}});
    return t;
  }
  InteractionState& s = t.state;
  if (event.kind == EventKind::kRotorRotate) {
    // Two rotors, so either direction moves to the other one.
    s.active_rotor =
        s.active_rotor == RotorKind::kSeries ? RotorKind::kSonification : RotorKind::kSeries;
    say(s.active_rotor == RotorKind::kSeries ? "Series" : "Sonification");
    return t;
  }
  if (event.direction != Direction::kUp && event.direction != Direction::kDown) {
    t.feedback.push_back({event.time_ms, EarconCue{Earcon::kUnavailable}});
    return t;
  }
  if (s.active_rotor == RotorKind::kSonification) {
    s.sonification_on = !s.sonification_on;
    say(s.sonification_on ? "Sonification on" : "Sonification off");
    return t;
  }
  // Cycle through overview, series 0, series 1, ...
  const std::size_t states = model_.series_count() + 1;
  std::size_t position = s.active_series ? *s.active_series + 1 : 0;
  position = event.direction == Direction::kDown ? (position + 1) % states
                                                 : (position + states - 1) % states;
  if (position == 0) {
    s.active_series.reset();
    say("Overview");
  } else {
    s.active_series = position - 1;
    say(model_.series_name(position - 1));
  }
  return t;
}

Transition Engine::ToggleSeriesFilter(InteractionState state, std::size_t series,
                                      std::int64_t time_ms) const {
  Transition t{std::move(state), {}};
  InteractionState& s = t.state;
  if (series >= model_.series_count()) {
    t.feedback.push_back({time_ms, EarconCue{Earcon::kUnavailable}});
    return t;
  }
  const bool visible = s.filter.is_visible(series);
  if (visible) {
    const auto shown = std::count(s.filter.visible.begin(), s.filter.visible.end(), true);
    if (shown <= 1) {
      t.feedback.push_back({time_ms, EarconCue{Earcon::kUnavailable}});
      return t;
    }
  }
  s.filter.visible[series] = !visible;
  if (visible) {
    // Hidden points leave the scanning window.
    std::erase_if(s.scan.indices_within_radius,
                  [&](PointId id) { return model_.point(id).series == series; });
  }
  t.feedback.push_back(
      {time_ms, Speech{model_.series_name(series) + (visible ? " hidden" : " shown")}});
  return t;
}

Transition Engine::TransitionMode(InteractionState state, std::int64_t time_ms) const {
  Transition t{std::move(state), {}};
  InteractionState& s = t.state;
  if (s.mode == Mode::kSnf) {
    s.mode = Mode::kDtm;
    s.viewport = {FocusXInterval(s.focus.focus), model_.y_range()};
    s.dtm_entry_viewport = s.viewport;
    s.dtm_last_touch.reset();
    s.scan = ScanState::FromConfig(config_.dtm);
    s.lock = {};
    s.finger_down = false;
    s.last_emitted_position.reset();
    t.feedback.push_back(
        {time_ms, ModeAnnouncement{"Direct touch mode, " +
                                   narrator_.Narrate(s.focus.focus, MoveKind::kNewPosition,
                                                     s.filter)}});
    return t;
  }

  if (s.dtm_last_touch || !(s.viewport == s.dtm_entry_viewport)) {
    const DataCoord p = s.dtm_last_touch.value_or(DataCoord{s.viewport.x.center(),
                                                            s.viewport.y.center()});
    s.focus = LandingFocus(s.focus, p);
  }
  s.mode = Mode::kSnf;
  s.viewport = model_.full_viewport();
  s.scan = ScanState::FromConfig(config_.dtm);
  s.lock = {};
  s.finger_down = false;
  s.last_emitted_position.reset();
  s.dtm_last_touch.reset();
  t.feedback.push_back(
      {time_ms, ModeAnnouncement{"Navigation mode, " +
                                 narrator_.Narrate(s.focus.focus, MoveKind::kNewPosition,
                                                   s.filter)}});
  return t;
}

SnfFocus Engine::LandingFocus(const SnfFocus& saved, DataCoord p) const {
  if (saved.focus == saved.container) return saved;
  const SemanticNode& f = tree_.node(saved.focus);

  auto nearest_point = [&](const std::vector<NodeId>& candidates) -> std::optional<NodeId> {
    std::optional<NodeId> best;
    double best_dx = std::numeric_limits<double>::infinity();
    double best_dy = best_dx;
    for (NodeId c : candidates) {
      const SemanticNode& n = tree_.node(c);
      if (n.level != NodeLevel::kPoint) continue;
      const DataPoint& dp = model_.point(n.points.at(0));
      if (f.level == NodeLevel::kPoint && dp.series != f.series) continue;
      const double dx = std::abs(dp.x - p.x);
      const double dy = std::abs(dp.y - p.y);
      if (dx < best_dx || (dx == best_dx && dy < best_dy)) {
        best = c;
        best_dx = dx;
        best_dy = dy;
      }
    }
    return best;
  };

  if (f.zone == ZoneKind::kDataPoints && f.level == NodeLevel::kPoint) {
    const auto& kids = tree_.node(tree_.zone(ZoneKind::kDataPoints)).children;
    if (auto hit = nearest_point(kids)) return FocusOn(*hit);
    return saved;
  }

  const std::optional<NodeId> old_bin = tree_.EnclosingBin(saved.focus);
  if (!old_bin || tree_.node(*old_bin).axis != Axis::kX) return saved;
  const NodeId bin = tree_.BinContaining(Axis::kX, p.x);

  switch (f.level) {
    case NodeLevel::kBin:
      return FocusOn(bin);
    case NodeLevel::kSeriesInBin:
      if (auto sub = tree_.SeriesSubtree(bin, f.series)) return FocusOn(*sub);
      return FocusOn(bin);
    case NodeLevel::kCell: {
      auto sub = tree_.SeriesSubtree(bin, f.series);
      if (!sub) return FocusOn(bin);
      const auto& cells = tree_.node(*sub).children;
      return FocusOn(cells.at(BinIndex(model_.y_range(), cells.size(), p.y)));
    }
    case NodeLevel::kPoint:
      if (auto hit = nearest_point(tree_.node(bin).children)) return FocusOn(*hit);
      return FocusOn(bin);
    default:
      return saved;
  }
}

// ---------------------------------------------------------------------------
// Direct touch

void Engine::HandleDtm(Context& ctx) const {
  const InputEvent& e = ctx.event;
  InteractionState& s = ctx.state;
  switch (e.kind) {
    case EventKind::kTouchDown:
    case EventKind::kTouchMove:
      DtmTouch(ctx);
      return;
    case EventKind::kTouchUp:
      DtmTouchUp(ctx);
      return;
    case EventKind::kPinch: {
      const ScreenPoint focus = e.position.value_or(
          ScreenPoint{config_.screen.width / 2.0, config_.screen.height / 2.0});
      s.viewport = ApplyPinch(s.viewport, e.scale, focus, config_.screen, model_.full_viewport());
      s.scan.indices_within_radius.clear();
      s.lock = {};
      ctx.Emit(Speech{model_.spec().x_label + " " + narrator_.FormatX(s.viewport.x.lo) +
                      " to " + narrator_.FormatX(s.viewport.x.hi)});
      return;
    }
    case EventKind::kSplitTap: {
      std::optional<ScreenPoint> pos = e.position ? e.position : s.last_position;
      if (!pos) {
        ctx.Unavailable();
        return;
      }
      ctx.Emit(Speech{SplitTapInfo(narrator_, model_, s.viewport, config_.screen, *pos,
                                   DtmSeries(s), config_.min_touch_px)});
      return;
    }
    case EventKind::kSwipe:
      if (e.direction == Direction::kUp || e.direction == Direction::kDown) {
        DtmSeriesSwitch(ctx);
      } else {
        ctx.Unavailable();
      }
      return;
    case EventKind::kDoubleTapHoldMove:
      if (e.direction == Direction::kHold) {
        Transition t = TransitionMode(std::move(s), e.time_ms);
        s = std::move(t.state);
        for (auto& f : t.feedback) ctx.out.push_back(std::move(f));
      } else {
        ctx.Unavailable();
      }
      return;
    case EventKind::kDoubleTap:
    case EventKind::kZScrub:
    case EventKind::kRotorRotate:
    case EventKind::kRotorFlick:
    case EventKind::kThreeFingerSwipe:
      ctx.Unavailable();
      return;
  }
  ctx.Unavailable();
}

void Engine::DtmTouch(Context& ctx) const {
  InteractionState& s = ctx.state;
  const InputEvent& e = ctx.event;
  std::optional<ScreenPoint> pos = e.position ? e.position : s.last_position;
  if (!pos || !std::isfinite(pos->x) || !std::isfinite(pos->y)) {
    ctx.Unavailable();
    return;
  }
  pos->x = std::clamp(pos->x, 0.0, static_cast<double>(config_.screen.width));
  pos->y = std::clamp(pos->y, 0.0, static_cast<double>(config_.screen.height));
  s.finger_down = true;
  s.last_position = pos;
  s.dtm_last_touch = ScreenToData(*pos, s.viewport, config_.screen);

  if (model_.kind() != ChartKind::kScatter) {
    const auto series = DtmSeries(s);
    if (!series) return;
    ProjectResult r = ProjectToX(model_, *series, s.viewport, config_.screen, *pos, s.throttle,
                                 e.time_ms, config_.dtm, config_.sound);
    s.throttle = r.throttle;
    if (r.tone) {
      ctx.Emit(Tone{*r.tone});
      if (r.haptic_pulses > 0) ctx.Emit(Haptic{r.haptic_pulses});
      s.last_emitted_position = pos;
    }
    return;
  }

  const auto targets = ScanTargets(s);
  ScanResult scan = ScanUpdate(s.scan, *pos, targets);
  s.scan = std::move(scan.next);
  if (scan.haptic_count > 0) ctx.Emit(Haptic{static_cast<int>(scan.haptic_count)});

  const GridConfig& g = tree_.grid();
  LockResult lock = LockUpdate(s.lock, CellAt(*pos, config_.screen, g.x_bins, g.y_cells_per_bin));
  s.lock = std::move(lock.next);
  if (lock.step) ctx.Emit(ToneSequence{StepToneSequence(*lock.step, config_.dtm)});
}

void Engine::DtmTouchUp(Context& ctx) const {
  InteractionState& s = ctx.state;
  const InputEvent& e = ctx.event;
  const std::optional<ScreenPoint> final_pos = e.position ? e.position : s.last_position;

  if (model_.kind() != ChartKind::kScatter && s.finger_down && final_pos &&
      std::isfinite(final_pos->x) && std::isfinite(final_pos->y)) {
    ScreenPoint pos{std::clamp(final_pos->x, 0.0, static_cast<double>(config_.screen.width)),
                    std::clamp(final_pos->y, 0.0, static_cast<double>(config_.screen.height))};
    const auto series = DtmSeries(s);
    if (series && s.last_emitted_position != pos) {
      // The last position of a pan always sounds. When it arrives inside the
      // throttle window it is scheduled for the window's end.
      std::int64_t at = e.time_ms;
      if (s.throttle.last_emit_ms) {
        at = std::max(at, *s.throttle.last_emit_ms + s.throttle.min_interval_ms);
      }
      ProjectResult r = ProjectToX(model_, *series, s.viewport, config_.screen, pos, s.throttle,
                                   at, config_.dtm, config_.sound);
      s.throttle = r.throttle;
      if (r.tone) {
        ctx.out.push_back({at, Tone{*r.tone}});
        if (r.haptic_pulses > 0) ctx.out.push_back({at, Haptic{r.haptic_pulses}});
      }
      s.dtm_last_touch = ScreenToData(pos, s.viewport, config_.screen);
    }
  }
  s.finger_down = false;
  s.last_emitted_position.reset();
  s.scan.indices_within_radius.clear();
  s.lock = {};
}

void Engine::DtmSeriesSwitch(Context& ctx) const {
  InteractionState& s = ctx.state;
  std::vector<std::size_t> visible;
  for (std::size_t i = 0; i < model_.series_count(); ++i) {
    if (s.filter.is_visible(i)) visible.push_back(i);
  }
  if (visible.size() < 2) {
    ctx.Unavailable();
    return;
  }
  const std::size_t current = DtmSeries(s).value_or(visible.front());
  auto it = std::find(visible.begin(), visible.end(), current);
  std::size_t index = static_cast<std::size_t>(it - visible.begin());
  index = ctx.event.direction == Direction::kDown ? (index + 1) % visible.size()
                                                  : (index + visible.size() - 1) % visible.size();
  s.active_series = visible[index];
  s.scan.indices_within_radius.clear();
  ctx.Emit(Speech{model_.series_name(visible[index])});
}

// ---------------------------------------------------------------------------

std::optional<std::string> Engine::CheckInvariants(const InteractionState& s) const {
  const std::size_t n = tree_.size();
  if (s.focus.container.value >= n || s.focus.focus.value >= n) return "focus node out of range";
  const SemanticNode& container = tree_.node(s.focus.container);
  const SemanticNode& focus = tree_.node(s.focus.focus);
  if (container.children.empty()) return "container has no children";
  if (s.focus.focus != s.focus.container && focus.parent != s.focus.container) {
    return "focus is not a child of the container";
  }
  const std::size_t pages = PageCount(container.children.size(), config_.screen,
                                      config_.min_touch_px, tree_.ChildLayout(container.id));
  if (s.focus.page >= pages) return "page out of range";
  if (s.focus.focus != s.focus.container && PageOf(s.focus.focus) != s.focus.page) {
    return "focus is not on the current page";
  }
  if (s.active_series && *s.active_series >= model_.series_count()) {
    return "active series out of range";
  }
  if (s.filter.visible.size() != model_.series_count()) return "filter size mismatch";
  if (std::none_of(s.filter.visible.begin(), s.filter.visible.end(), [](bool v) { return v; })) {
    return "every series hidden";
  }
  const Viewport full = model_.full_viewport();
  const double eps_x = 1e-9 * std::max(1.0, full.x.span());
  const double eps_y = 1e-9 * std::max(1.0, full.y.span());
  if (!(s.viewport.x.lo < s.viewport.x.hi) || !(s.viewport.y.lo < s.viewport.y.hi)) {
    return "empty viewport";
  }
  if (s.viewport.x.lo < full.x.lo - eps_x || s.viewport.x.hi > full.x.hi + eps_x ||
      s.viewport.y.lo < full.y.lo - eps_y || s.viewport.y.hi > full.y.hi + eps_y) {
    return "viewport outside the data range";
  }
  if (s.scan.min_rad > s.scan.max_rad || s.scan.radius_cover_distance < 1) {
    return "scan radius bounds invalid";
  }
  if (!std::is_sorted(s.scan.indices_within_radius.begin(), s.scan.indices_within_radius.end())) {
    return "scan hit set not sorted";
  }
  if (s.mode == Mode::kDtm) {
    const auto targets = ScanTargets(s);
    for (PointId id : s.scan.indices_within_radius) {
      const bool present = std::any_of(targets.begin(), targets.end(),
                                       [&](const ScanTarget& t) { return t.id == id; });
      if (!present) return "scan hit set holds a point outside the viewport";
    }
  } else if (!s.scan.indices_within_radius.empty()) {
    return "scan hit set not empty in navigation mode";
  }
  if (s.lock.recent_cells.size() > 3) return "lock history too long";
  return std::nullopt;
}

}  // namespace chartnav
