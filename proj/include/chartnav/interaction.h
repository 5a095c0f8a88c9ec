#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chartnav/chart_model.h"
#include "chartnav/dtm.h"
#include "chartnav/events.h"
#include "chartnav/narration.h"
#include "chartnav/semantic_tree.h"
#include "chartnav/sonification.h"

namespace chartnav {

enum class Mode { kSnf, kDtm };
enum class RotorKind { kSeries, kSonification };

std::string_view ToString(Mode mode);

struct EngineConfig {
  // Unset means GridConfig::Defaults(model).
  std::optional<GridConfig> grid;
  ScreenSize screen;
  int min_touch_px = kDefaultMinTouchPx;
  DtmConfig dtm;
  SonificationConfig sound;

  void Validate() const;
};

// Where semantic navigation stands: `container` is the node whose children
// fill the screen, `focus` one of those children (or the container itself
// before anything was selected), `page` the page shown.
struct SnfFocus {
  NodeId container;
  std::size_t page = 0;
  NodeId focus;
  friend bool operator==(const SnfFocus&, const SnfFocus&) = default;
};

struct InteractionState {
  Mode mode = Mode::kSnf;
  // In DTM this is the navigation position to return to.
  SnfFocus focus;
  RotorKind active_rotor = RotorKind::kSeries;
  bool sonification_on = false;
  std::optional<std::size_t> active_series;  // unset = overview
  SeriesFilter filter;
  Viewport viewport;
  ScanState scan;
  LockState lock;
  ThrottleState throttle;
  std::map<NodeId, std::string> repeat_cache;

  // Touch bookkeeping.
  bool finger_down = false;
  std::optional<ScreenPoint> last_position;
  std::optional<ScreenPoint> last_emitted_position;
  Viewport dtm_entry_viewport;
  std::optional<DataCoord> dtm_last_touch;

  friend bool operator==(const InteractionState&, const InteractionState&) = default;
};

struct Transition {
  InteractionState state;
  std::vector<FeedbackEvent> feedback;
};

// What a client needs to draw the current screen.
struct Geometry {
  Mode mode = Mode::kSnf;
  Viewport viewport;
  PageLayout layout;              // SNF only
  std::vector<ScanTarget> points; // DTM: visible points in screen space
};

// Immutable chart context plus the transition function. One Engine can
// serve any number of sessions; each session owns its InteractionState.
class Engine {
 public:
  static std::shared_ptr<const Engine> Create(ChartModel model, EngineConfig config);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const ChartModel& model() const { return model_; }
  const SemanticTree& tree() const { return tree_; }
  const Narrator& narrator() const { return narrator_; }
  const EngineConfig& config() const { return config_; }
  const GridConfig& grid() const { return tree_.grid(); }

  InteractionState InitialState() const;
  // Chart overview spoken when a session starts.
  std::vector<FeedbackEvent> OpenFeedback() const;

  // Total: every event in every state has a defined outcome.
  Transition Dispatch(InteractionState state, const InputEvent& event) const;

  Transition RotorInteract(InteractionState state, const InputEvent& event) const;
  Transition TransitionMode(InteractionState state, std::int64_t time_ms) const;
  Transition ToggleSeriesFilter(InteractionState state, std::size_t series,
                                std::int64_t time_ms) const;

  PageLayout CurrentLayout(const InteractionState& state) const;
  Geometry Snapshot(const InteractionState& state) const;
  // Points the scanning window may hit: visible series (the active one only,
  // when set) inside the viewport, in screen space.
  std::vector<ScanTarget> ScanTargets(const InteractionState& state) const;
  // The x-interval a DTM viewport zooms to when leaving from `node`.
  Interval FocusXInterval(NodeId node) const;

  // Empty when every state invariant holds; otherwise the first violation.
  std::optional<std::string> CheckInvariants(const InteractionState& state) const;

 private:
  Engine(ChartModel model, EngineConfig config);

  struct Context;

  void HandleSnf(Context& ctx) const;
  void HandleDtm(Context& ctx) const;
  void SnfTouch(Context& ctx) const;
  void SnfSwipe(Context& ctx) const;
  void SnfDoubleTap(Context& ctx) const;
  void SnfZScrub(Context& ctx) const;
  void SnfPage(Context& ctx) const;
  void JumpToZone(Context& ctx, ZoneKind zone) const;
  void DtmTouch(Context& ctx) const;
  void DtmTouchUp(Context& ctx) const;
  void DtmSeriesSwitch(Context& ctx) const;

  void EmitFocus(Context& ctx, NodeId node, MoveKind move) const;
  std::optional<FeedbackPayload> Sonify(const InteractionState& state, NodeId node) const;
  std::size_t PerPage(NodeId container) const;
  std::size_t PageOf(NodeId node) const;
  SnfFocus FocusOn(NodeId node) const;
  SnfFocus LandingFocus(const SnfFocus& saved, DataCoord p) const;
  std::optional<std::size_t> DtmSeries(const InteractionState& state) const;
  ToneSpec PointTone(const DataPoint& p) const;

  ChartModel model_;
  EngineConfig config_;
  SemanticTree tree_;
  Narrator narrator_;
};

// Convenience owner of one session's state.
class Session {
 public:
  explicit Session(std::shared_ptr<const Engine> engine)
      : engine_(std::move(engine)), state_(engine_->InitialState()) {}

  std::vector<FeedbackEvent> Open() const { return engine_->OpenFeedback(); }
  std::vector<FeedbackEvent> Dispatch(const InputEvent& event) {
    Transition t = engine_->Dispatch(std::move(state_), event);
    state_ = std::move(t.state);
    return std::move(t.feedback);
  }

  const InteractionState& state() const { return state_; }
  const Engine& engine() const { return *engine_; }

 private:
  std::shared_ptr<const Engine> engine_;
  InteractionState state_;
};

}  // namespace chartnav
