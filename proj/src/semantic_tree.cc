#include "chartnav/semantic_tree.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace chartnav {
namespace {

constexpr std::size_t kMaxLineBins = 31;

// Strips along one extent: item i covers [Edge(i), Edge(i + 1)).
int StripEdge(int extent, std::size_t count, std::size_t i) {
  return static_cast<int>(static_cast<long long>(extent) * static_cast<long long>(i) /
                          static_cast<long long>(count));
}

bool InHalfOpen(double v, int lo, int hi, int screen_extent) {
  return (lo <= v && v < hi) || (hi == screen_extent && v == hi);
}

}  // namespace

std::string_view ToString(NodeLevel level) {
  switch (level) {
    case NodeLevel::kOverview:
      return "overview";
    case NodeLevel::kZone:
      return "zone";
    case NodeLevel::kBin:
      return "bin";
    case NodeLevel::kSeriesInBin:
      return "series_in_bin";
    case NodeLevel::kCell:
      return "cell";
    case NodeLevel::kPoint:
      return "point";
    case NodeLevel::kSeriesToggle:
      return "series_toggle";
  }
  return "overview";
}

std::string_view ToString(ZoneKind zone) {
  switch (zone) {
    case ZoneKind::kXAxis:
      return "x_axis";
    case ZoneKind::kYAxis:
      return "y_axis";
    case ZoneKind::kDataPoints:
      return "data_points";
    case ZoneKind::kFilters:
      return "filters";
  }
  return "x_axis";
}

GridConfig GridConfig::Defaults(const ChartModel& model) {
  if (model.kind() == ChartKind::kScatter) return {9, 9};
  std::size_t largest = 0;
  for (std::size_t s = 0; s < model.series_count(); ++s) {
    largest = std::max(largest, model.SeriesSize(s));
  }
  return {std::clamp<std::size_t>(largest, 1, kMaxLineBins), 9};
}

void GridConfig::Validate() const {
  if (x_bins < 1) throw TreeError("x_bins must be at least 1");
  if (y_cells_per_bin < 1) throw TreeError("y_cells_per_bin must be at least 1");
}

double BinEdge(const Interval& range, std::size_t count, std::size_t i) {
  if (i >= count) return range.hi;
  return range.lo + range.span() * static_cast<double>(i) / static_cast<double>(count);
}

std::size_t BinIndex(const Interval& range, std::size_t count, double v) {
  if (count <= 1 || !(v > range.lo)) return 0;
  if (v >= range.hi) return count - 1;
  auto idx = static_cast<std::size_t>(
      std::clamp(std::floor((v - range.lo) / range.span() * static_cast<double>(count)), 0.0,
                 static_cast<double>(count - 1)));
  // The floor above can land one bin off near an edge; settle against the
  // exact edges so membership agrees with the published intervals.
  while (idx + 1 < count && v >= BinEdge(range, count, idx + 1)) ++idx;
  while (idx > 0 && v < BinEdge(range, count, idx)) --idx;
  return idx;
}

NodeId SemanticTree::Add(SemanticNode node) {
  node.id = NodeId{static_cast<std::uint32_t>(nodes_.size())};
  if (node.parent) {
    auto& parent = nodes_[node.parent->value];
    node.index = parent.children.size();
    parent.children.push_back(node.id);
  }
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

SemanticTree SemanticTree::Build(const ChartModel& model, GridConfig grid) {
  grid.Validate();
  SemanticTree tree;
  tree.grid_ = grid;
  tree.kind_ = model.kind();
  tree.total_points_ = model.points().size();

  SemanticNode root;
  root.level = NodeLevel::kOverview;
  root.x_interval = model.x_range();
  root.y_interval = model.y_range();
  tree.Add(std::move(root));

  for (ZoneKind kind : {ZoneKind::kXAxis, ZoneKind::kYAxis, ZoneKind::kDataPoints,
                        ZoneKind::kFilters}) {
    SemanticNode zone;
    zone.level = NodeLevel::kZone;
    zone.zone = kind;
    zone.parent = tree.root();
    zone.x_interval = model.x_range();
    zone.y_interval = model.y_range();
    tree.zones_[static_cast<std::size_t>(kind)] = tree.Add(std::move(zone));
  }

  tree.BuildAxisZone(model, Axis::kX);
  tree.BuildAxisZone(model, Axis::kY);

  // Every point, in reading order.
  std::vector<PointId> all(model.points().size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = PointId{i};
  std::stable_sort(all.begin(), all.end(), [&](PointId a, PointId b) {
    const auto& pa = model.point(a);
    const auto& pb = model.point(b);
    if (pa.x != pb.x) return pa.x < pb.x;
    if (pa.series != pb.series) return pa.series < pb.series;
    return pa.y < pb.y;
  });
  for (PointId id : all) {
    SemanticNode point;
    point.level = NodeLevel::kPoint;
    point.zone = ZoneKind::kDataPoints;
    point.parent = tree.zone(ZoneKind::kDataPoints);
    point.points = {id};
    point.series = model.point(id).series;
    point.x_interval = {model.point(id).x, model.point(id).x};
    point.y_interval = {model.point(id).y, model.point(id).y};
    tree.Add(std::move(point));
  }

  for (std::size_t s = 0; s < model.series_count(); ++s) {
    SemanticNode toggle;
    toggle.level = NodeLevel::kSeriesToggle;
    toggle.zone = ZoneKind::kFilters;
    toggle.parent = tree.zone(ZoneKind::kFilters);
    toggle.series = s;
    tree.Add(std::move(toggle));
  }
  return tree;
}

void SemanticTree::BuildAxisZone(const ChartModel& model, Axis axis) {
  const ZoneKind zone_kind = axis == Axis::kX ? ZoneKind::kXAxis : ZoneKind::kYAxis;
  const NodeId zone_id = zone(zone_kind);
  const Interval& binned = axis == Axis::kX ? model.x_range() : model.y_range();
  const Interval& other = axis == Axis::kX ? model.y_range() : model.x_range();
  const std::size_t bin_count = grid_.x_bins;
  const std::size_t cell_count = grid_.y_cells_per_bin;

  auto along = [axis](const DataPoint& p) { return axis == Axis::kX ? p.x : p.y; };
  auto across = [axis](const DataPoint& p) { return axis == Axis::kX ? p.y : p.x; };

  std::vector<std::vector<PointId>> members(bin_count);
  for (std::uint32_t i = 0; i < model.points().size(); ++i) {
    members[BinIndex(binned, bin_count, along(model.points()[i]))].push_back(PointId{i});
  }

  std::size_t& max_cells = axis == Axis::kX ? max_cell_count_x_ : max_cell_count_y_;

  for (std::size_t b = 0; b < bin_count; ++b) {
    const Interval bin_interval{BinEdge(binned, bin_count, b), BinEdge(binned, bin_count, b + 1)};
    SemanticNode bin;
    bin.level = NodeLevel::kBin;
    bin.zone = zone_kind;
    bin.axis = axis;
    bin.parent = zone_id;
    bin.x_interval = axis == Axis::kX ? bin_interval : other;
    bin.y_interval = axis == Axis::kX ? other : bin_interval;
    bin.points = members[b];
    bin.series_counts.assign(model.series_count(), 0);
    for (PointId id : bin.points) ++bin.series_counts[model.point(id).series];
    const NodeId bin_id = Add(bin);

    if (kind_ == ChartKind::kScatter) {
      for (std::size_t s = 0; s < model.series_count(); ++s) {
        SemanticNode series;
        series.level = NodeLevel::kSeriesInBin;
        series.zone = zone_kind;
        series.axis = axis;
        series.parent = bin_id;
        series.series = s;
        series.x_interval = bin.x_interval;
        series.y_interval = bin.y_interval;
        for (PointId id : bin.points) {
          if (model.point(id).series == s) series.points.push_back(id);
        }
        std::vector<std::vector<PointId>> cells(cell_count);
        for (PointId id : series.points) {
          cells[BinIndex(other, cell_count, across(model.point(id)))].push_back(id);
        }
        const NodeId series_id = Add(std::move(series));
        for (std::size_t c = 0; c < cell_count; ++c) {
          const Interval cell_interval{BinEdge(other, cell_count, c),
                                       BinEdge(other, cell_count, c + 1)};
          SemanticNode cell;
          cell.level = NodeLevel::kCell;
          cell.zone = zone_kind;
          cell.axis = axis;
          cell.parent = series_id;
          cell.series = s;
          cell.x_interval = axis == Axis::kX ? bin_interval : cell_interval;
          cell.y_interval = axis == Axis::kX ? cell_interval : bin_interval;
          max_cells = std::max(max_cells, cells[c].size());
          cell.points = std::move(cells[c]);
          Add(std::move(cell));
        }
      }
    } else {
      std::vector<PointId> ordered = members[b];
      std::stable_sort(ordered.begin(), ordered.end(), [&](PointId a, PointId c) {
        const auto& pa = model.point(a);
        const auto& pc = model.point(c);
        if (along(pa) != along(pc)) return along(pa) < along(pc);
        if (pa.series != pc.series) return pa.series < pc.series;
        return across(pa) < across(pc);
      });
      for (PointId id : ordered) {
        SemanticNode point;
        point.level = NodeLevel::kPoint;
        point.zone = zone_kind;
        point.axis = axis;
        point.parent = bin_id;
        point.points = {id};
        point.series = model.point(id).series;
        point.x_interval = {model.point(id).x, model.point(id).x};
        point.y_interval = {model.point(id).y, model.point(id).y};
        Add(std::move(point));
      }
    }
  }
}

LayoutAxis SemanticTree::ChildLayout(NodeId parent) const {
  const SemanticNode& n = node(parent);
  switch (n.level) {
    case NodeLevel::kOverview:
      return LayoutAxis::kQuadrants;
    case NodeLevel::kZone:
      return n.zone == ZoneKind::kYAxis ? LayoutAxis::kVertical : LayoutAxis::kHorizontal;
    case NodeLevel::kBin:
      return n.axis == Axis::kX ? LayoutAxis::kHorizontal : LayoutAxis::kVertical;
    case NodeLevel::kSeriesInBin:
      // Cells run across the bin: bottom to top for x bins.
      return n.axis == Axis::kX ? LayoutAxis::kVertical : LayoutAxis::kHorizontal;
    case NodeLevel::kCell:
    case NodeLevel::kPoint:
    case NodeLevel::kSeriesToggle:
      break;
  }
  return LayoutAxis::kHorizontal;
}

NodeId SemanticTree::BinContaining(Axis axis, double v) const {
  const SemanticNode& z = node(zone(axis == Axis::kX ? ZoneKind::kXAxis : ZoneKind::kYAxis));
  const Interval& range = axis == Axis::kX ? z.x_interval : z.y_interval;
  return z.children.at(BinIndex(range, z.children.size(), v));
}

std::optional<NodeId> SemanticTree::SeriesSubtree(NodeId bin, std::size_t series) const {
  for (NodeId child : node(bin).children) {
    const SemanticNode& c = node(child);
    if (c.level == NodeLevel::kSeriesInBin && c.series == series) return child;
  }
  return std::nullopt;
}

std::optional<NodeId> SemanticTree::EnclosingBin(NodeId id) const {
  std::optional<NodeId> current = id;
  while (current) {
    const SemanticNode& n = node(*current);
    if (n.level == NodeLevel::kBin) return current;
    current = n.parent;
  }
  return std::nullopt;
}

std::size_t ItemsPerPage(ScreenSize screen, int min_touch_px, LayoutAxis axis) {
  switch (axis) {
    case LayoutAxis::kQuadrants:
      return 4;
    case LayoutAxis::kHorizontal:
      return std::max<std::size_t>(1, static_cast<std::size_t>(screen.width / min_touch_px));
    case LayoutAxis::kVertical:
      return std::max<std::size_t>(1, static_cast<std::size_t>(screen.height / min_touch_px));
  }
  return 1;
}

std::size_t PageCount(std::size_t node_count, ScreenSize screen, int min_touch_px,
                      LayoutAxis axis) {
  const std::size_t per_page = ItemsPerPage(screen, min_touch_px, axis);
  return std::max<std::size_t>(1, (node_count + per_page - 1) / per_page);
}

PageLayout LayoutPage(std::span<const NodeId> nodes, ScreenSize screen, std::size_t page_index,
                      int min_touch_px, LayoutAxis axis) {
  if (nodes.empty()) throw TreeError("cannot lay out an empty node list");
  if (min_touch_px <= 0) throw TreeError("min_touch_px must be positive");
  if (screen.width <= 0 || screen.height <= 0) throw TreeError("screen must be non-empty");

  PageLayout layout;
  layout.screen = screen;
  layout.page_index = page_index;
  layout.page_count = PageCount(nodes.size(), screen, min_touch_px, axis);
  if (page_index >= layout.page_count) {
    throw TreeError("page " + std::to_string(page_index) + " out of range (" +
                    std::to_string(layout.page_count) + " pages)");
  }

  if (axis == LayoutAxis::kQuadrants) {
    if (nodes.size() != 4) throw TreeError("quadrant layout needs exactly four nodes");
    const int half_w = screen.width / 2;
    const int half_h = screen.height / 2;
    const Rect bottom_left{0, half_h, half_w, screen.height - half_h};
    const Rect top_left{0, 0, half_w, half_h};
    const Rect top_right{half_w, 0, screen.width - half_w, half_h};
    const Rect bottom_right{half_w, half_h, screen.width - half_w, screen.height - half_h};
    // Zone order is x_axis, y_axis, data_points, filters.
    layout.regions = {{nodes[0], bottom_left},
                      {nodes[1], top_left},
                      {nodes[2], top_right},
                      {nodes[3], bottom_right}};
    return layout;
  }

  const std::size_t per_page = ItemsPerPage(screen, min_touch_px, axis);
  const std::size_t first = page_index * per_page;
  const std::size_t count = std::min(per_page, nodes.size() - first);
  layout.regions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rect r;
    if (axis == LayoutAxis::kHorizontal) {
      const int lo = StripEdge(screen.width, count, i);
      const int hi = StripEdge(screen.width, count, i + 1);
      r = {lo, 0, hi - lo, screen.height};
    } else {
      const int lo = StripEdge(screen.height, count, i);
      const int hi = StripEdge(screen.height, count, i + 1);
      r = {0, screen.height - hi, screen.width, hi - lo};
    }
    layout.regions.push_back({nodes[first + i], r});
  }
  return layout;
}

NodeId HitTest(const PageLayout& layout, ScreenPoint q) {
  const ScreenSize& s = layout.screen;
  if (!(q.x >= 0 && q.x <= s.width && q.y >= 0 && q.y <= s.height)) {
    throw TreeError("point outside the screen");
  }
  for (const Region& region : layout.regions) {
    const Rect& r = region.rect;
    if (InHalfOpen(q.x, r.left, r.right(), s.width) &&
        InHalfOpen(q.y, r.top, r.bottom(), s.height)) {
      return region.node;
    }
  }
  throw TreeError("layout does not cover the point");
}

}  // namespace chartnav
