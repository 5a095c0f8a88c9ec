#include <gtest/gtest.h>

#include "chartnav/narration.h"
#include "test_util.h"

namespace chartnav {
namespace {

TEST(Density, Thresholds) {
  EXPECT_EQ(DensityLabel::FromFraction(0).tier, DensityTier::kEmpty);
  EXPECT_EQ(DensityLabel::FromFraction(0.05).tier, DensityTier::kVerySparse);
  EXPECT_EQ(DensityLabel::FromFraction(0.0501).tier, DensityTier::kSparse);
  EXPECT_EQ(DensityLabel::FromFraction(0.15).tier, DensityTier::kSparse);
  EXPECT_EQ(DensityLabel::FromFraction(0.25).tier, DensityTier::kModerate);
  EXPECT_EQ(DensityLabel::FromFraction(0.3).tier, DensityTier::kModerate);
  EXPECT_EQ(DensityLabel::FromFraction(0.5).tier, DensityTier::kDense);
  EXPECT_EQ(DensityLabel::FromFraction(0.51).tier, DensityTier::kVeryDense);
  EXPECT_EQ(DensityLabel::FromFraction(1).tier, DensityTier::kVeryDense);
}

TEST(Density, Monotone) {
  DensityTier prev = DensityTier::kEmpty;
  for (int i = 0; i <= 1000; ++i) {
    const DensityTier t = DensityLabel::FromFraction(i / 1000.0).tier;
    EXPECT_GE(static_cast<int>(t), static_cast<int>(prev));
    prev = t;
  }
}

TEST(FormatNumber, Rules) {
  EXPECT_EQ(FormatNumber(130), "130");
  EXPECT_EQ(FormatNumber(2.5), "2.5");
  EXPECT_EQ(FormatNumber(1.23456), "1.23");
  EXPECT_EQ(FormatNumber(1234567.891), "1234567.89");
  EXPECT_EQ(FormatNumber(-0.001), "0");
  EXPECT_EQ(FormatDate(static_cast<double>(ParseIsoDate("2022-08-17"))), "August 17 2022");
}

ChartModel Covid() {
  ChartSpec spec;
  spec.kind = ChartKind::kLine;
  spec.title = "Cases";
  spec.x_label = "Date";
  spec.y_label = "Cases";
  spec.x_kind = XKind::kTemporal;
  spec.series_names = {"WA", "OR"};
  return ParseDataset("date,cases,state\n2022-08-16,120,WA\n2022-08-17,130,WA\n2022-08-17,90,OR\n",
                      spec);
}

TEST(NarratePoint, AdaptiveOrder) {
  const ChartModel model = Covid();
  const SemanticTree tree = SemanticTree::Build(model, GridConfig::Defaults(model));
  const Narrator narrator(model, tree);
  const SemanticNode* target = nullptr;
  for (const SemanticNode& n : tree.nodes()) {
    if (n.level == NodeLevel::kPoint && n.zone == ZoneKind::kDataPoints &&
        model.point(n.points[0]).y == 130) {
      target = &n;
    }
  }
  ASSERT_NE(target, nullptr);
  EXPECT_EQ(narrator.NarratePoint(*target, MoveKind::kNewPosition), "August 17 2022, 130, WA");
  EXPECT_EQ(narrator.NarratePoint(*target, MoveKind::kAdjacent), "130, August 17 2022, WA");
  EXPECT_EQ(narrator.NarratePoint(*target, MoveKind::kNewPosition),
            narrator.NarratePoint(*target, MoveKind::kNewPosition));

  SeriesFilter filter{{true, false}};
  EXPECT_EQ(narrator.NarratePoint(*target, MoveKind::kNewPosition, filter),
            "August 17 2022, 130, WA, filter hides OR");
}

TEST(DescribeBin, PercentAndPhrase) {
  // 200 points: 50 in the first bin, none in the second, 150 in the third.
  std::vector<DataPoint> pts;
  for (int i = 0; i < 50; ++i) pts.push_back({0.5, double(i), 0});
  for (int i = 0; i < 150; ++i) pts.push_back({2.5, double(i), 0});
  const ChartModel model = testutil::Scatter(pts, {"s"});
  const SemanticTree tree = SemanticTree::Build(model, {3, 3});
  const Narrator narrator(model, tree);
  const auto& bins = tree.node(tree.zone(ZoneKind::kXAxis)).children;
  const std::string first = narrator.DescribeBin(tree.node(bins[0]), 200);
  EXPECT_NE(first.find(": 25% of data points, moderately distributed"), std::string::npos)
      << first;
  const std::string empty = narrator.DescribeBin(tree.node(bins[1]), 200);
  EXPECT_NE(empty.find(": 0% of data points, no data points"), std::string::npos) << empty;
  EXPECT_NE(narrator.DescribeBin(tree.node(bins[2]), 200).find("75%"), std::string::npos);
}

TEST(DescribeBin, RoundedPercentagesSumNearHundred) {
  std::mt19937_64 rng(4);
  const ChartModel model = testutil::RandomScatter(rng, 97, 2);
  const SemanticTree tree = SemanticTree::Build(model, {9, 9});
  const Narrator narrator(model, tree);
  long sum = 0;
  for (NodeId b : tree.node(tree.zone(ZoneKind::kXAxis)).children) {
    const std::string text = narrator.DescribeBin(tree.node(b), 97);
    const auto colon = text.find(": ");
    sum += std::stol(text.substr(colon + 2));
  }
  EXPECT_GE(sum, 100 - 9);
  EXPECT_LE(sum, 100 + 9);
}

TEST(DescribeCell, Phrases) {
  std::vector<DataPoint> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({0, 0, 0});
  for (int i = 0; i < 3; ++i) pts.push_back({0, 10, 0});
  const ChartModel model = testutil::Scatter(pts, {"s"});
  const SemanticTree tree = SemanticTree::Build(model, {1, 2});
  const Narrator narrator(model, tree);
  const SemanticNode& series =
      tree.node(tree.node(tree.node(tree.zone(ZoneKind::kXAxis)).children[0]).children[0]);
  const SemanticNode& bottom = tree.node(series.children[0]);
  const SemanticNode& top = tree.node(series.children[1]);
  EXPECT_EQ(narrator.DescribeCell(bottom, 10), "10 points, very densely distributed");
  EXPECT_EQ(narrator.DescribeCell(top, 10), "3 points, moderately distributed");

  SemanticNode empty = top;
  empty.points.clear();
  EXPECT_EQ(narrator.DescribeCell(empty, 10), "no data points");
}

TEST(NarrateZone, FixedStrings) {
  std::mt19937_64 rng(2);
  const ChartModel model = testutil::RandomScatter(rng, 5, 3);
  const SemanticTree tree = SemanticTree::Build(model, {3, 3});
  const Narrator narrator(model, tree);
  EXPECT_EQ(narrator.Narrate(tree.zone(ZoneKind::kXAxis), MoveKind::kNewPosition), "X axis area");
  EXPECT_EQ(narrator.Narrate(tree.zone(ZoneKind::kYAxis), MoveKind::kNewPosition), "Y axis area");
  EXPECT_EQ(narrator.Narrate(tree.zone(ZoneKind::kDataPoints), MoveKind::kNewPosition),
            "Data points area");
  EXPECT_EQ(narrator.Narrate(tree.zone(ZoneKind::kFilters), MoveKind::kNewPosition),
            "Filters area");
  EXPECT_EQ(narrator.NarrateOverview(),
            "Test scatter. Scatter chart, X axis X, Y axis Y. 3 series: s0, s1 and s2.");
}

}  // namespace
}  // namespace chartnav
