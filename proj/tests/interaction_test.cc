#include <gtest/gtest.h>

#include <random>

#include "chartnav/interaction.h"
#include "test_util.h"

namespace chartnav {
namespace {

using testutil::As;

const ScreenPoint kXZone{10, 790};
const ScreenPoint kYZone{10, 10};
const ScreenPoint kDataZone{470, 10};
const ScreenPoint kFilterZone{470, 790};

std::string SpeechOf(const std::vector<FeedbackEvent>& fb) {
  for (const FeedbackEvent& f : fb) {
    if (const auto* s = As<Speech>(f)) return s->text;
    if (const auto* m = As<ModeAnnouncement>(f)) return m->text;
  }
  return {};
}

bool HasEarcon(const std::vector<FeedbackEvent>& fb, Earcon e) {
  for (const FeedbackEvent& f : fb) {
    if (const auto* c = As<EarconCue>(f); c && c->earcon == e) return true;
  }
  return false;
}

std::shared_ptr<const Engine> DailyEngine(std::optional<GridConfig> grid = std::nullopt) {
  EngineConfig cfg;
  cfg.grid = grid;
  return Engine::Create(testutil::DailyModel(), cfg);
}

TEST(Engine, OpenAndZoneTouch) {
  Session s(DailyEngine());
  const auto open = s.Open();
  ASSERT_EQ(open.size(), 1u);
  EXPECT_EQ(SpeechOf(open).rfind("Daily cases. Line chart", 0), 0u);

  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::TouchDown(0, kXZone))), "X axis area");
  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::TouchMove(10, kYZone))), "Y axis area");
  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::TouchMove(20, kDataZone))), "Data points area");
  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::TouchMove(30, kFilterZone))), "Filters area");
  const auto hold = s.Dispatch(InputEvent::TouchMove(40, {460, 780}));
  EXPECT_TRUE(HasEarcon(hold, Earcon::kHold));
  EXPECT_TRUE(s.Dispatch(InputEvent::TouchUp(50)).empty());
}

TEST(Engine, DrillSwipeAndPaging) {
  Session s(DailyEngine());  // 31 bins: 10 per page, 4 pages
  s.Dispatch(InputEvent::TouchDown(0, kXZone));
  s.Dispatch(InputEvent::TouchUp(1));
  auto fb = s.Dispatch(InputEvent::DoubleTap(2));
  const Engine& e = s.engine();
  const NodeId zone = e.tree().zone(ZoneKind::kXAxis);
  EXPECT_EQ(s.state().focus.container, zone);
  EXPECT_EQ(s.state().focus.focus, e.tree().node(zone).children[0]);
  EXPECT_NE(SpeechOf(fb).find("% of data points"), std::string::npos);

  for (int i = 1; i <= 9; ++i) {
    fb = s.Dispatch(InputEvent::Swipe(10 + i, Direction::kRight));
    EXPECT_FALSE(HasEarcon(fb, Earcon::kPage));
  }
  EXPECT_EQ(s.state().focus.page, 0u);
  fb = s.Dispatch(InputEvent::Swipe(30, Direction::kRight));
  EXPECT_TRUE(HasEarcon(fb, Earcon::kPage));
  EXPECT_EQ(s.state().focus.page, 1u);
  EXPECT_EQ(s.state().focus.focus, e.tree().node(zone).children[10]);

  fb = s.Dispatch(InputEvent::ThreeFingerSwipe(40, Direction::kLeft));
  EXPECT_EQ(s.state().focus.page, 2u);
  EXPECT_EQ(s.state().focus.focus, e.tree().node(zone).children[20]);
  fb = s.Dispatch(InputEvent::ThreeFingerSwipe(41, Direction::kLeft));
  fb = s.Dispatch(InputEvent::ThreeFingerSwipe(42, Direction::kLeft));
  EXPECT_TRUE(HasEarcon(fb, Earcon::kUnavailable));
  EXPECT_EQ(s.state().focus.page, 3u);

  // Past the last bin there is nowhere to go.
  fb = s.Dispatch(InputEvent::Swipe(50, Direction::kRight));
  EXPECT_TRUE(HasEarcon(fb, Earcon::kUnavailable));
  EXPECT_EQ(s.state().focus.focus, e.tree().node(zone).children[30]);

  fb = s.Dispatch(InputEvent::ZScrub(60));
  EXPECT_EQ(SpeechOf(fb), "X axis area");
  EXPECT_EQ(s.state().focus.container, e.tree().root());
  fb = s.Dispatch(InputEvent::ZScrub(61));
  EXPECT_TRUE(HasEarcon(fb, Earcon::kUnavailable));
}

TEST(Engine, AdjacentPointsLeadWithY) {
  EngineConfig cfg;
  cfg.grid = GridConfig{2, 9};
  auto engine = Engine::Create(testutil::DailyModel(), cfg);
  Session s(engine);
  s.Dispatch(InputEvent::TouchDown(0, kXZone));
  s.Dispatch(InputEvent::DoubleTap(1));  // bin 0
  auto fb = s.Dispatch(InputEvent::DoubleTap(2));  // first point of January
  EXPECT_EQ(SpeechOf(fb).rfind("January 1 2022, ", 0), 0u) << SpeechOf(fb);
  fb = s.Dispatch(InputEvent::Swipe(3, Direction::kRight));
  const DataPoint& p = engine->model().point(engine->tree().node(s.state().focus.focus).points[0]);
  EXPECT_EQ(SpeechOf(fb), FormatNumber(p.y) + ", January 2 2022, WA");
  // Repeat returns the cached string.
  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::DoubleTap(4))), SpeechOf(fb));
}

TEST(Engine, ScatterCellZScrubReturnsToSeries) {
  std::mt19937_64 rng(17);
  auto engine = Engine::Create(testutil::RandomScatter(rng, 60, 2), {});
  Session s(engine);
  s.Dispatch(InputEvent::TouchDown(0, kXZone));
  s.Dispatch(InputEvent::DoubleTap(1));  // bin
  s.Dispatch(InputEvent::DoubleTap(2));  // series_in_bin
  s.Dispatch(InputEvent::DoubleTap(3));  // cell
  EXPECT_EQ(engine->tree().node(s.state().focus.focus).level, NodeLevel::kCell);
  const NodeId series = s.state().focus.container;
  const auto fb = s.Dispatch(InputEvent::ZScrub(4));
  EXPECT_EQ(s.state().focus.focus, series);
  EXPECT_EQ(SpeechOf(fb), engine->narrator().Narrate(series, MoveKind::kNewPosition));
}

TEST(Engine, RapidZoneJumps) {
  Session s(DailyEngine());
  const Engine& e = s.engine();
  s.Dispatch(InputEvent::DoubleTapHoldMove(0, Direction::kUp));
  EXPECT_EQ(s.state().focus.focus, e.tree().zone(ZoneKind::kYAxis));
  s.Dispatch(InputEvent::DoubleTapHoldMove(1, Direction::kDown));
  EXPECT_EQ(s.state().focus.focus, e.tree().zone(ZoneKind::kXAxis));
  s.Dispatch(InputEvent::DoubleTapHoldMove(2, Direction::kLeft));
  EXPECT_EQ(s.state().focus.focus, e.tree().zone(ZoneKind::kFilters));
  const auto fb = s.Dispatch(InputEvent::DoubleTapHoldMove(3, Direction::kRight));
  EXPECT_EQ(s.state().focus.focus, e.tree().zone(ZoneKind::kDataPoints));
  EXPECT_EQ(SpeechOf(fb), "Data points area");
}

TEST(Engine, Rotors) {
  std::mt19937_64 rng(1);
  auto engine = Engine::Create(testutil::RandomScatter(rng, 10, 3), {});
  Session s(engine);
  const InteractionState start = s.state();
  s.Dispatch(InputEvent::RotorRotate(0, Rotation::kClockwise));
  s.Dispatch(InputEvent::RotorRotate(1, Rotation::kClockwise));
  EXPECT_EQ(s.state().active_rotor, start.active_rotor);

  // Series rotor has overview plus three series.
  std::vector<std::string> spoken;
  for (int i = 0; i < 4; ++i) {
    spoken.push_back(SpeechOf(s.Dispatch(InputEvent::RotorFlick(10 + i, Direction::kDown))));
  }
  EXPECT_EQ(spoken, (std::vector<std::string>{"s0", "s1", "s2", "Overview"}));
  EXPECT_EQ(s.state().active_series, start.active_series);
  s.Dispatch(InputEvent::RotorFlick(20, Direction::kUp));
  EXPECT_EQ(s.state().active_series, std::optional<std::size_t>(2));
  s.Dispatch(InputEvent::RotorFlick(21, Direction::kDown));

  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::RotorRotate(30, Rotation::kCounterClockwise))),
            "Sonification");
  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::RotorFlick(31, Direction::kDown))), "Sonification on");
  EXPECT_TRUE(s.state().sonification_on);
  EXPECT_EQ(SpeechOf(s.Dispatch(InputEvent::RotorFlick(32, Direction::kDown))),
            "Sonification off");
}

TEST(Engine, PenguinBinSonification) {
  // Gentoo-like series: first-bin points only in cells 4 and 5 of 7.
  const ChartModel model =
      testutil::Scatter({{0, 35, 0}, {0, 45, 0}, {10, 0, 0}, {10, 70, 0}}, {"Gentoo"});
  EngineConfig cfg;
  cfg.grid = GridConfig{2, 7};
  Session s(Engine::Create(model, cfg));
  s.Dispatch(InputEvent::RotorRotate(0, Rotation::kClockwise));
  s.Dispatch(InputEvent::RotorFlick(1, Direction::kDown));
  s.Dispatch(InputEvent::TouchDown(2, kXZone));
  s.Dispatch(InputEvent::DoubleTap(3));  // x zone, first bin
  s.Dispatch(InputEvent::DoubleTap(4));  // bin 0, Gentoo subtree
  const auto fb = s.Dispatch(InputEvent::TouchDown(5, {240, 400}));
  ASSERT_EQ(fb.size(), 1u);
  const auto* seq = As<ToneSequence>(fb[0]);
  ASSERT_NE(seq, nullptr);
  ASSERT_EQ(seq->tones.size(), 7u);
  std::string pattern;
  for (const ToneSpec& t : seq->tones) pattern += t.is_numb() ? 'n' : 'T';
  EXPECT_EQ(pattern, "nnnTTnn");
}

TEST(Engine, JanuaryModeTransition) {
  auto engine = DailyEngine(GridConfig{2, 9});
  Session s(engine);
  s.Dispatch(InputEvent::TouchDown(0, kXZone));
  s.Dispatch(InputEvent::TouchUp(1));
  s.Dispatch(InputEvent::DoubleTap(2));
  const SemanticNode& bin = engine->tree().node(s.state().focus.focus);
  ASSERT_EQ(bin.level, NodeLevel::kBin);
  ASSERT_EQ(bin.points.size(), 31u);
  const SnfFocus before = s.state().focus;

  const auto fb = s.Dispatch(InputEvent::DoubleTapHoldMove(3, Direction::kHold));
  EXPECT_EQ(s.state().mode, Mode::kDtm);
  EXPECT_EQ(s.state().viewport.x.lo, static_cast<double>(ParseIsoDate("2022-01-01")));
  EXPECT_EQ(s.state().viewport.x.hi, static_cast<double>(ParseIsoDate("2022-01-31")));
  EXPECT_EQ(s.state().viewport.y, engine->model().y_range());
  EXPECT_EQ(SpeechOf(fb).rfind("Direct touch mode, ", 0), 0u);
  EXPECT_NE(SpeechOf(fb).find("50% of data points"), std::string::npos) << SpeechOf(fb);

  const auto back = s.Dispatch(InputEvent::DoubleTapHoldMove(4, Direction::kHold));
  EXPECT_EQ(s.state().mode, Mode::kSnf);
  EXPECT_EQ(s.state().focus, before);
  EXPECT_EQ(SpeechOf(back).rfind("Navigation mode, ", 0), 0u);
}

TEST(Engine, OverviewTransitionUsesFullRange) {
  auto engine = DailyEngine();
  Session s(engine);
  s.Dispatch(InputEvent::DoubleTapHoldMove(0, Direction::kHold));
  EXPECT_EQ(s.state().viewport, engine->model().full_viewport());
}

TEST(Engine, DtmLandingFollowsTouch) {
  auto engine = DailyEngine(GridConfig{2, 9});
  Session s(engine);
  s.Dispatch(InputEvent::TouchDown(0, kXZone));
  s.Dispatch(InputEvent::DoubleTap(1));  // January bin
  s.Dispatch(InputEvent::DoubleTapHoldMove(2, Direction::kHold));
  s.Dispatch(InputEvent::Pinch(3, 0.01, {240, 400}));  // out to the full range
  s.Dispatch(InputEvent::TouchDown(4, {470, 400}));    // far right: March
  s.Dispatch(InputEvent::TouchUp(5));
  s.Dispatch(InputEvent::DoubleTapHoldMove(6, Direction::kHold));
  const NodeId zone = engine->tree().zone(ZoneKind::kXAxis);
  EXPECT_EQ(s.state().focus.focus, engine->tree().node(zone).children[1]);
}

TEST(Engine, SeriesFilter) {
  std::mt19937_64 rng(3);
  auto engine = Engine::Create(testutil::RandomScatter(rng, 30, 3), {});
  const InteractionState start = engine->InitialState();

  Transition hidden = engine->ToggleSeriesFilter(start, 2, 0);
  EXPECT_EQ(SpeechOf(hidden.feedback), "s2 hidden");
  Transition shown = engine->ToggleSeriesFilter(hidden.state, 2, 1);
  EXPECT_EQ(SpeechOf(shown.feedback), "s2 shown");
  EXPECT_EQ(shown.state, start);

  InteractionState one = engine->ToggleSeriesFilter(start, 0, 0).state;
  one = engine->ToggleSeriesFilter(one, 1, 0).state;
  const Transition refused = engine->ToggleSeriesFilter(one, 2, 0);
  EXPECT_TRUE(HasEarcon(refused.feedback, Earcon::kUnavailable));
  EXPECT_EQ(refused.state, one);

  // Hidden points never reach the scanning window.
  InteractionState dtm = engine->TransitionMode(hidden.state, 0).state;
  for (const ScanTarget& t : engine->ScanTargets(dtm)) {
    EXPECT_NE(engine->model().point(t.id).series, 2u);
  }
}

TEST(Engine, FilterToggleThroughGestures) {
  std::mt19937_64 rng(3);
  Session s(Engine::Create(testutil::RandomScatter(rng, 30, 2), {}));
  s.Dispatch(InputEvent::TouchDown(0, kFilterZone));
  s.Dispatch(InputEvent::DoubleTap(1));  // first toggle
  auto fb = s.Dispatch(InputEvent::DoubleTap(2));
  EXPECT_EQ(SpeechOf(fb), "s0 hidden");
  fb = s.Dispatch(InputEvent::DoubleTap(3));
  EXPECT_EQ(SpeechOf(fb), "s0 shown");
}

TEST(Engine, DtmThrottleAndFlush) {
  auto engine = DailyEngine();
  Session s(engine);
  s.Dispatch(InputEvent::DoubleTapHoldMove(0, Direction::kHold));
  auto fb = s.Dispatch(InputEvent::TouchDown(100, {100, 400}));
  ASSERT_FALSE(fb.empty());
  EXPECT_NE(As<Tone>(fb[0]), nullptr);
  fb = s.Dispatch(InputEvent::TouchMove(130, {120, 400}));
  EXPECT_TRUE(fb.empty());
  fb = s.Dispatch(InputEvent::TouchMove(150, {140, 400}));
  EXPECT_TRUE(fb.empty());
  // The pan ends inside the window; its last position still sounds, at the
  // end of the window.
  fb = s.Dispatch(InputEvent::TouchUp(160));
  ASSERT_FALSE(fb.empty());
  EXPECT_NE(As<Tone>(fb[0]), nullptr);
  EXPECT_EQ(fb[0].time_ms, 180);
}

TEST(Engine, DtmScatterHapticsAndLock) {
  // A row of points along the screen's middle.
  std::vector<DataPoint> pts;
  for (int i = 0; i < 9; ++i) pts.push_back({double(i), 0.0, 0});
  pts.push_back({0, 10, 0});
  pts.push_back({0, -10, 0});
  Session s(Engine::Create(testutil::Scatter(pts, {"a"}), {}));
  s.Dispatch(InputEvent::DoubleTapHoldMove(0, Direction::kHold));
  const auto targets = s.engine().ScanTargets(s.state());
  ASSERT_EQ(targets.size(), pts.size());

  int pulses = 0;
  int steps = 0;
  std::int64_t t = 10;
  auto feed = [&](const std::vector<FeedbackEvent>& fb) {
    for (const FeedbackEvent& f : fb) {
      if (const auto* h = As<Haptic>(f)) pulses += h->pulses;
      if (As<ToneSequence>(f)) ++steps;
    }
  };
  const double y = targets[0].pos.y;
  feed(s.Dispatch(InputEvent::TouchDown(t, {5, y})));
  for (double x = 5; x < 475; x += 10) feed(s.Dispatch(InputEvent::TouchMove(t += 10, {x, y})));
  EXPECT_GE(pulses, 9);
  EXPECT_EQ(s.state().lock.phase, LockPhase::kLocked);
  EXPECT_EQ(steps, 0);
  // Drift up by a full row.
  feed(s.Dispatch(InputEvent::TouchMove(t += 10, {470, y - 800.0 / 9})));
  EXPECT_EQ(steps, 1);
}

TEST(Engine, UnavailableGestures) {
  Session s(DailyEngine());
  EXPECT_TRUE(HasEarcon(s.Dispatch(InputEvent::Pinch(0, 2, {1, 1})), Earcon::kUnavailable));
  EXPECT_TRUE(HasEarcon(s.Dispatch(InputEvent::SplitTap(1)), Earcon::kUnavailable));
  EXPECT_TRUE(HasEarcon(s.Dispatch(InputEvent::Swipe(2, Direction::kUp)), Earcon::kUnavailable));
  s.Dispatch(InputEvent::DoubleTapHoldMove(3, Direction::kHold));
  EXPECT_TRUE(HasEarcon(s.Dispatch(InputEvent::RotorRotate(4, Rotation::kClockwise)),
                        Earcon::kUnavailable));
  EXPECT_TRUE(HasEarcon(s.Dispatch(InputEvent::ZScrub(5)), Earcon::kUnavailable));
}

TEST(Engine, FuzzKeepsInvariants) {
  std::mt19937_64 rng(2024);
  const auto scatter = Engine::Create(testutil::RandomScatter(rng, 120, 3), {});
  const auto line = DailyEngine();
  for (const auto& engine : {scatter, line}) {
    InteractionState state = engine->InitialState();
    std::uniform_int_distribution<int> kind(0, 11);
    std::uniform_real_distribution<double> px(-20, 500), py(-20, 820), sc(0.2, 5);
    std::uniform_int_distribution<int> dir(1, 5);
    std::int64_t t = 0;
    for (int i = 0; i < 5000; ++i) {
      InputEvent e;
      e.kind = static_cast<EventKind>(kind(rng));
      e.time_ms = t += std::uniform_int_distribution<int>(0, 120)(rng);
      e.position = ScreenPoint{px(rng), py(rng)};
      e.direction = static_cast<Direction>(dir(rng));
      e.scale = sc(rng);
      if (e.Problem()) continue;
      Transition tr = engine->Dispatch(std::move(state), e);
      state = std::move(tr.state);
      const auto problem = engine->CheckInvariants(state);
      ASSERT_FALSE(problem) << *problem << " after event " << i;
    }
  }
}

}  // namespace
}  // namespace chartnav
