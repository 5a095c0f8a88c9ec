#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chartnav/chart_model.h"
#include "chartnav/semantic_tree.h"

namespace chartnav {

enum class MoveKind { kNewPosition, kAdjacent, kRepeat };

struct NavContext {
  MoveKind move = MoveKind::kNewPosition;
  std::optional<NodeId> previous;
};

// Ordered from empty to very dense.
enum class DensityTier { kEmpty, kVerySparse, kSparse, kModerate, kDense, kVeryDense };

struct DensityLabel {
  DensityTier tier = DensityTier::kEmpty;
  double fraction = 0.0;

  // f = 0 empty, (0, .05] very sparse, (.05, .15] sparse, (.15, .30]
  // moderate, (.30, .50] dense, above .50 very dense.
  static DensityLabel FromFraction(double fraction);
  std::string_view Phrase() const;
};

// At most two decimals, trailing zeros dropped, no thousands separators.
std::string FormatNumber(double v);
// "August 17 2022" for a day count since 1970-01-01 (rounded to a day).
std::string FormatDate(double days);

// Per-series visibility. All series are visible unless toggled off.
struct SeriesFilter {
  std::vector<bool> visible;

  bool active() const;
  bool is_visible(std::size_t series) const {
    return series >= visible.size() || visible[series];
  }
  friend bool operator==(const SeriesFilter&, const SeriesFilter&) = default;
};

// Builds every spoken string. Holds references; the model and tree must
// outlive it.
class Narrator {
 public:
  Narrator(const ChartModel& model, const SemanticTree& tree) : model_(model), tree_(tree) {}

  // X value as the axis presents it: number, date, or category label.
  std::string FormatX(double x) const;
  std::string FormatY(double y) const { return FormatNumber(y); }

  // New position: "<X>, <Y>, <series>"; adjacent: "<Y>, <X>, <series>".
  // kRepeat without a cached string falls back to new-position order.
  std::string NarratePoint(const SemanticNode& point, MoveKind move,
                           const SeriesFilter& filter = {}) const;
  // "<interval>: <P>% of data points, <density phrase>".
  std::string DescribeBin(const SemanticNode& bin, std::size_t total_points) const;
  // "<n> points, <density phrase>", or "no data points".
  std::string DescribeCell(const SemanticNode& cell, std::size_t max_cell_count) const;
  std::string DescribeSeriesInBin(const SemanticNode& series, const SeriesFilter& filter) const;
  std::string NarrateZone(const SemanticNode& zone) const;
  std::string NarrateOverview() const;
  std::string NarrateToggle(const SemanticNode& toggle, const SeriesFilter& filter) const;

  // Dispatches on the node level.
  std::string Narrate(NodeId id, MoveKind move, const SeriesFilter& filter = {}) const;

  std::string FormatBinInterval(const SemanticNode& bin) const;

 private:
  std::string FilterSuffix(const SeriesFilter& filter) const;

  const ChartModel& model_;
  const SemanticTree& tree_;
};

}  // namespace chartnav
