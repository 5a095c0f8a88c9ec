#include <gtest/gtest.h>

#include <random>

#include "chartnav/dtm.h"
#include "oracles.h"
#include "test_util.h"

namespace chartnav {
namespace {

std::vector<ScanTarget> Targets(const std::vector<ScreenPoint>& pts) {
  std::vector<ScanTarget> out;
  for (std::uint32_t i = 0; i < pts.size(); ++i) out.push_back({PointId{i}, pts[i]});
  return out;
}

TEST(Scan, WorkedExample) {
  ScanState s;
  s.radius_cover_distance = 2;
  s.min_rad = 15;
  s.max_rad = 60;
  const auto targets = Targets({{10, 0}, {0, 30}, {200, 0}});
  const ScanResult r = ScanUpdate(s, {0, 0}, targets);
  EXPECT_EQ(r.adjusted_radius, 30.0);
  EXPECT_EQ(r.haptic_count, 2u);
  EXPECT_EQ(r.next.indices_within_radius, (std::vector<PointId>{PointId{0}, PointId{1}}));

  const ScanResult again = ScanUpdate(r.next, {0, 0}, targets);
  EXPECT_EQ(again.haptic_count, 0u);
}

TEST(Scan, EmptyAndSparse) {
  const ScanState s = ScanState::FromConfig({});
  const ScanResult empty = ScanUpdate(s, {5, 5}, {});
  EXPECT_EQ(empty.haptic_count, 0u);
  EXPECT_EQ(empty.adjusted_radius, s.min_rad);
  EXPECT_TRUE(empty.next.indices_within_radius.empty());

  // Fewer points than the cover distance: the farthest one sets the radius.
  const ScanResult one = ScanUpdate(s, {0, 0}, Targets({{20, 0}}));
  EXPECT_EQ(one.adjusted_radius, 20.0);
  EXPECT_EQ(one.haptic_count, 1u);
}

TEST(Scan, MatchesOracle) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> coord(0, 400);
  std::uniform_int_distribution<int> count(0, 60);
  std::uniform_int_distribution<std::size_t> cover(1, 8);
  std::uniform_real_distribution<double> rad(0, 80);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<ScreenPoint> pts;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      // Integer lattice coordinates make exact distance ties common.
      pts.push_back({std::round(coord(rng) / 10) * 10, std::round(coord(rng) / 10) * 10});
    }
    ScanState s;
    s.radius_cover_distance = cover(rng);
    s.min_rad = rad(rng);
    s.max_rad = s.min_rad + rad(rng);
    std::set<unsigned> previous;
    const auto targets = Targets(pts);
    std::vector<oracle::Pt> opts;
    for (std::uint32_t i = 0; i < pts.size(); ++i) opts.push_back({i, pts[i].x, pts[i].y});

    for (int step = 0; step < 4; ++step) {
      const ScreenPoint pos{std::round(coord(rng)), std::round(coord(rng))};
      const ScanResult got = ScanUpdate(s, pos, targets);
      const oracle::ScanOutcome want =
          oracle::Scan(opts, pos.x, pos.y, s.radius_cover_distance, s.min_rad, s.max_rad, previous);
      std::set<unsigned> hits;
      for (PointId id : got.next.indices_within_radius) hits.insert(id.value);
      ASSERT_EQ(hits, want.hits);
      ASSERT_EQ(got.haptic_count, want.newly_hit.size());
      ASSERT_EQ(got.adjusted_radius, want.adjusted_radius);
      ASSERT_GE(got.adjusted_radius, s.min_rad);
      ASSERT_LE(got.adjusted_radius, s.max_rad);
      s = got.next;
      previous = want.hits;
    }
  }
}

TEST(Scan, MonotoneApproachFiresOnce) {
  ScanState s = ScanState::FromConfig({});
  const auto targets = Targets({{200, 200}});
  std::size_t pulses = 0;
  for (int x = 0; x <= 200; x += 5) {
    const ScanResult r = ScanUpdate(s, {static_cast<double>(x), 200}, targets);
    pulses += r.haptic_count;
    s = r.next;
  }
  EXPECT_EQ(pulses, 1u);
}

TEST(Throttle, GateArithmetic) {
  ThrottleState t;
  t.min_interval_ms = 80;
  auto [a0, t0] = ThrottleGate(t, 0);
  auto [a50, t50] = ThrottleGate(t0, 50);
  auto [a100, t100] = ThrottleGate(t50, 100);
  EXPECT_TRUE(a0);
  EXPECT_FALSE(a50);
  EXPECT_TRUE(a100);
  EXPECT_EQ(t100.last_emit_ms, 100);
  auto [again, t_again] = ThrottleGate(t100, 100);
  EXPECT_FALSE(again);
}

TEST(Lock, ScriptedSequences) {
  LockState lock;
  for (GridCell c : {GridCell{0, 4}, GridCell{1, 4}}) {
    const LockResult r = LockUpdate(lock, c);
    EXPECT_FALSE(r.step);
    EXPECT_NE(r.next.phase, LockPhase::kLocked);
    lock = r.next;
  }
  LockResult r = LockUpdate(lock, {2, 4});
  EXPECT_FALSE(r.step);
  EXPECT_EQ(r.next.phase, LockPhase::kLocked);
  EXPECT_EQ(r.next.direction, LockDirection::kHorizontal);

  const LockResult up = LockUpdate(r.next, {3, 3});
  ASSERT_TRUE(up.step);
  EXPECT_EQ(*up.step, StepTone::kUp);
  EXPECT_EQ(up.next.phase, LockPhase::kArmed);

  const LockResult down = LockUpdate(r.next, {3, 5});
  ASSERT_TRUE(down.step);
  EXPECT_EQ(*down.step, StepTone::kDown);

  const LockResult on_course = LockUpdate(r.next, {3, 4});
  EXPECT_FALSE(on_course.step);
  EXPECT_EQ(on_course.next.phase, LockPhase::kLocked);

  // Duplicate cells change nothing.
  EXPECT_EQ(LockUpdate(r.next, {2, 4}).next, r.next);

  LockState fresh;
  fresh = LockUpdate(fresh, {0, 4}).next;
  const LockResult diag = LockUpdate(fresh, {1, 5});
  EXPECT_FALSE(diag.step);
}

TEST(Lock, Vertical) {
  LockState lock;
  for (GridCell c : {GridCell{2, 0}, GridCell{2, 1}, GridCell{2, 2}}) lock = LockUpdate(lock, c).next;
  EXPECT_EQ(lock.phase, LockPhase::kLocked);
  EXPECT_EQ(lock.direction, LockDirection::kVertical);
  EXPECT_EQ(*LockUpdate(lock, {3, 3}).step, StepTone::kUp);
  EXPECT_EQ(*LockUpdate(lock, {1, 3}).step, StepTone::kDown);
}

TEST(Lock, NoToneUnlessLocked) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> d(-1, 1);
  LockState lock;
  GridCell cell{4, 4};
  for (int i = 0; i < 10000; ++i) {
    cell.col = std::clamp(cell.col + d(rng), 0, 8);
    cell.row = std::clamp(cell.row + d(rng), 0, 8);
    const bool was_locked = lock.phase == LockPhase::kLocked;
    const LockResult r = LockUpdate(lock, cell);
    if (r.step) EXPECT_TRUE(was_locked);
    EXPECT_LE(r.next.recent_cells.size(), 3u);
    lock = r.next;
  }
}

TEST(StepTones, Pairs) {
  const auto up = StepToneSequence(StepTone::kUp);
  ASSERT_EQ(up.size(), 2u);
  EXPECT_EQ(up[0].pitch_hz, 880.0);
  EXPECT_EQ(up[1].pitch_hz, 1175.0);
  EXPECT_EQ(up[0].duration_ms, 60.0);
  const auto down = StepToneSequence(StepTone::kDown);
  EXPECT_EQ(down[0].pitch_hz, 1175.0);
}

TEST(Pinch, Examples) {
  const Viewport full{{0, 100}, {0, 100}};
  const ScreenSize screen{400, 400};
  EXPECT_EQ(ApplyPinch(full, 1.0, {10, 10}, screen, full), full);
  const Viewport zoomed = ApplyPinch(full, 2.0, {200, 200}, screen, full);
  EXPECT_EQ(zoomed.x, (Interval{25, 75}));
  EXPECT_EQ(zoomed.y, (Interval{25, 75}));
  EXPECT_EQ(ApplyPinch(full, 0.1, {200, 200}, screen, full), full);
  EXPECT_EQ(ApplyPinch(zoomed, 0.1, {0, 0}, screen, full), full);
}

TEST(Pinch, AnchorPreserved) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0, 400), scale(1.0, 4.0);
  const Viewport full{{-50, 150}, {10, 20}};
  const ScreenSize screen{400, 400};
  Viewport vp = full;
  for (int i = 0; i < 200; ++i) {
    const ScreenPoint f{pos(rng), pos(rng)};
    const DataCoord before = ScreenToData(f, vp, screen);
    const Viewport next = ApplyPinch(vp, scale(rng), f, screen, full);
    const bool clamped = next.x.lo == full.x.lo || next.x.hi == full.x.hi ||
                         next.y.lo == full.y.lo || next.y.hi == full.y.hi;
    if (!clamped) {
      const DataCoord after = ScreenToData(f, next, screen);
      EXPECT_NEAR(after.x, before.x, 1e-9 * full.x.span());
      EXPECT_NEAR(after.y, before.y, 1e-9 * full.y.span());
    }
    EXPECT_GE(next.x.lo, full.x.lo);
    EXPECT_LE(next.x.hi, full.x.hi);
    EXPECT_LT(next.x.lo, next.x.hi);
    vp = i % 10 == 9 ? full : next;
  }
}

TEST(ProjectToX, ToneAndHaptic) {
  const ChartModel model = testutil::Line({{0, 0, 0}, {10, 10, 0}, {20, 0, 0}});
  const Viewport vp = model.full_viewport();
  const ScreenSize screen{400, 400};
  // On the line at the middle point.
  const ScreenPoint on = DataToScreen({10, 10}, vp, screen);
  const ProjectResult hit = ProjectToX(model, 0, vp, screen, on, {}, 0);
  ASSERT_TRUE(hit.tone);
  EXPECT_EQ(hit.haptic_pulses, 1);
  EXPECT_EQ(hit.tone->pitch_hz, PitchForValue(10, model.y_range()));
  // Same x, far below the line.
  const ScreenPoint off{on.x, 399};
  const ProjectResult miss = ProjectToX(model, 0, vp, screen, off, {}, 0);
  ASSERT_TRUE(miss.tone);
  EXPECT_EQ(miss.haptic_pulses, 0);
  EXPECT_EQ(miss.tone->pitch_hz, hit.tone->pitch_hz);
}

TEST(ProjectToX, TiesGoToSmallerX) {
  const ChartModel model = testutil::Line({{0, 1, 0}, {2, 5, 0}});
  EXPECT_EQ(NearestByX(model, 0, 1.0)->value, 0u);
}

TEST(ProjectToX, IncreasingSweepIncreasingPitch) {
  std::vector<DataPoint> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({double(i), double(i * i), 0});
  const ChartModel model = testutil::Line(pts);
  const ScreenSize screen{480, 800};
  ThrottleState throttle;
  double last = 0;
  std::int64_t t = 0;
  int tones = 0;
  for (int x = 0; x <= 480; x += 4) {
    const ProjectResult r =
        ProjectToX(model, 0, model.full_viewport(), screen, {double(x), 400}, throttle, t);
    throttle = r.throttle;
    t += 100;
    if (!r.tone) continue;
    EXPECT_GE(r.tone->pitch_hz, last);
    last = r.tone->pitch_hz;
    ++tones;
  }
  EXPECT_GT(tones, 19);
}

TEST(SplitTap, CenterAndStrips) {
  std::mt19937_64 rng(6);
  const ChartModel model = testutil::RandomScatter(rng, 20, 1);
  const SemanticTree tree = SemanticTree::Build(model, {3, 3});
  const Narrator narrator(model, tree);
  const Viewport vp = model.full_viewport();
  const ScreenSize screen{480, 800};
  const std::string center = SplitTapInfo(narrator, model, vp, screen, {240, 400}, 0, 48);
  EXPECT_EQ(center, FormatNumber(vp.x.center()) + ", " + FormatNumber(vp.y.center()) + ", s0");
  EXPECT_EQ(center, SplitTapInfo(narrator, model, vp, screen, {240, 400}, 0, 48));
  EXPECT_EQ(SplitTapInfo(narrator, model, vp, screen, {240, 790}, 0, 48).rfind("X axis, ", 0), 0u);
  EXPECT_EQ(SplitTapInfo(narrator, model, vp, screen, {10, 400}, 0, 48).rfind("Y axis, ", 0), 0u);
}

}  // namespace
}  // namespace chartnav
