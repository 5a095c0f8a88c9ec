#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "chartnav/chart_model.h"

namespace chartnav {

enum class NodeLevel { kOverview, kZone, kBin, kSeriesInBin, kCell, kPoint, kSeriesToggle };
enum class ZoneKind { kXAxis, kYAxis, kDataPoints, kFilters };
enum class Axis { kX, kY };

// How a node's children are arranged on screen.
//   kHorizontal: strips left to right.
//   kVertical:   strips bottom to top.
//   kQuadrants:  the fixed 2x2 zone grid.
enum class LayoutAxis { kHorizontal, kVertical, kQuadrants };

std::string_view ToString(NodeLevel level);
std::string_view ToString(ZoneKind zone);

struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct SemanticNode {
  NodeId id;
  NodeLevel level = NodeLevel::kOverview;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;

  // For zones this is the zone itself; for descendants, the enclosing zone.
  ZoneKind zone = ZoneKind::kXAxis;
  // Bins, series-in-bin and cell nodes: the axis their bin partitions.
  Axis axis = Axis::kX;
  // Position among the parent's children.
  std::size_t index = 0;

  // Bins and their descendants: the data-space rectangle covered. For an
  // x-axis bin this is the bin's x-interval times the full y range.
  Interval x_interval;
  Interval y_interval;

  // Bins, series-in-bin and cells: every contained point. Point nodes: the
  // single referenced point.
  std::vector<PointId> points;
  // Bins only: points per series; sums to points.size().
  std::vector<std::size_t> series_counts;
  // Series-in-bin, cell, point and series-toggle nodes.
  std::size_t series = 0;

  const Interval& BinInterval() const { return axis == Axis::kX ? x_interval : y_interval; }
  const Interval& CellInterval() const { return axis == Axis::kX ? y_interval : x_interval; }
};

struct GridConfig {
  std::size_t x_bins = 9;
  std::size_t y_cells_per_bin = 9;

  // 9x9 for scatter plots; min(largest series size, 31) bins otherwise.
  static GridConfig Defaults(const ChartModel& model);
  void Validate() const;
};

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Edges of `count` equal-width bins over `range`; edge 0 is range.lo and
// edge `count` is exactly range.hi.
double BinEdge(const Interval& range, std::size_t count, std::size_t i);
// Half-open bins, the last one closed. Values outside the range clamp to the
// first or last bin.
std::size_t BinIndex(const Interval& range, std::size_t count, double v);

class SemanticTree {
 public:
  static SemanticTree Build(const ChartModel& model, GridConfig grid);

  NodeId root() const { return NodeId{0}; }
  NodeId zone(ZoneKind kind) const { return zones_[static_cast<std::size_t>(kind)]; }
  const SemanticNode& node(NodeId id) const { return nodes_.at(id.value); }
  const std::vector<SemanticNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const GridConfig& grid() const { return grid_; }
  ChartKind kind() const { return kind_; }
  std::size_t total_points() const { return total_points_; }

  LayoutAxis ChildLayout(NodeId parent) const;

  // Largest cell count anywhere under the given axis zone (0 without cells).
  std::size_t max_cell_count(Axis axis) const {
    return axis == Axis::kX ? max_cell_count_x_ : max_cell_count_y_;
  }
  // The bin of the given axis zone whose interval contains v.
  NodeId BinContaining(Axis axis, double v) const;
  // The series-in-bin child of a scatter bin for `series`, if any.
  std::optional<NodeId> SeriesSubtree(NodeId bin, std::size_t series) const;
  // The bin ancestor (or self) of a node, if it sits under an axis zone.
  std::optional<NodeId> EnclosingBin(NodeId id) const;

 private:
  SemanticTree() = default;

  NodeId Add(SemanticNode node);
  void BuildAxisZone(const ChartModel& model, Axis axis);

  std::vector<SemanticNode> nodes_;
  NodeId zones_[4];
  GridConfig grid_;
  ChartKind kind_ = ChartKind::kLine;
  std::size_t total_points_ = 0;
  std::size_t max_cell_count_x_ = 0;
  std::size_t max_cell_count_y_ = 0;
};

// Integer logical-pixel rectangle.
struct Rect {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;

  int right() const { return left + width; }
  int bottom() const { return top + height; }
  long long area() const { return static_cast<long long>(width) * height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Region {
  NodeId node;
  Rect rect;
  friend bool operator==(const Region&, const Region&) = default;
};

struct PageLayout {
  std::size_t page_index = 0;
  std::size_t page_count = 1;
  ScreenSize screen;
  std::vector<Region> regions;
};

inline constexpr int kDefaultMinTouchPx = 48;

std::size_t ItemsPerPage(ScreenSize screen, int min_touch_px, LayoutAxis axis);
std::size_t PageCount(std::size_t node_count, ScreenSize screen, int min_touch_px,
                      LayoutAxis axis);

// Lays one page of `nodes` out so that the regions tile the whole screen.
// Throws TreeError when page_index is out of range or the input is empty.
PageLayout LayoutPage(std::span<const NodeId> nodes, ScreenSize screen, std::size_t page_index,
                      int min_touch_px, LayoutAxis axis);

// Regions are closed on their left and top edges. The screen's own right and
// bottom edges belong to the regions touching them. Throws TreeError for a
// point outside the screen.
NodeId HitTest(const PageLayout& layout, ScreenPoint q);

}  // namespace chartnav
