#include "chartnav/narration.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace chartnav {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

std::string PointCount(std::size_t n) {
  return std::to_string(n) + (n == 1 ? " point" : " points");
}

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += (i + 1 == names.size()) ? " and " : ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

DensityLabel DensityLabel::FromFraction(double fraction) {
  DensityTier tier;
  if (fraction <= 0.0) {
    tier = DensityTier::kEmpty;
  } else if (fraction <= 0.05) {
    tier = DensityTier::kVerySparse;
  } else if (fraction <= 0.15) {
    tier = DensityTier::kSparse;
  } else if (fraction <= 0.30) {
    tier = DensityTier::kModerate;
  } else if (fraction <= 0.50) {
    tier = DensityTier::kDense;
  } else {
    tier = DensityTier::kVeryDense;
  }
  return {tier, std::clamp(fraction, 0.0, 1.0)};
}

std::string_view DensityLabel::Phrase() const {
  switch (tier) {
    case DensityTier::kEmpty:
      return "no data points";
    case DensityTier::kVerySparse:
      return "very sparsely distributed";
    case DensityTier::kSparse:
      return "sparsely distributed";
    case DensityTier::kModerate:
      return "moderately distributed";
    case DensityTier::kDense:
      return "densely distributed";
    case DensityTier::kVeryDense:
      return "very densely distributed";
  }
  return "no data points";
}

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string FormatDate(double days) {
  using namespace std::chrono;
  const auto whole = static_cast<long long>(std::llround(days));
  const year_month_day ymd{sys_days{std::chrono::days{whole}}};
  return std::string(kMonthNames[static_cast<unsigned>(ymd.month()) - 1]) + " " +
         std::to_string(static_cast<unsigned>(ymd.day())) + " " +
         std::to_string(static_cast<int>(ymd.year()));
}

bool SeriesFilter::active() const {
  return std::find(visible.begin(), visible.end(), false) != visible.end();
}

std::string Narrator::FormatX(double x) const {
  switch (model_.spec().x_kind) {
    case XKind::kNumeric:
      return FormatNumber(x);
    case XKind::kTemporal:
      return FormatDate(x);
    case XKind::kCategorical: {
      const auto& cats = model_.categories();
      if (cats.empty()) return FormatNumber(x);
      const auto idx = std::clamp<long long>(std::llround(x), 0,
                                             static_cast<long long>(cats.size()) - 1);
      return cats[static_cast<std::size_t>(idx)];
    }
  }
  return FormatNumber(x);
}

std::string Narrator::FilterSuffix(const SeriesFilter& filter) const {
  if (!filter.active()) return {};
  std::vector<std::string> hidden;
  for (std::size_t s = 0; s < model_.series_count(); ++s) {
    if (!filter.is_visible(s)) hidden.push_back(model_.series_name(s));
  }
  return ", filter hides " + JoinNames(hidden);
}

std::string Narrator::NarratePoint(const SemanticNode& point, MoveKind move,
                                   const SeriesFilter& filter) const {
  const DataPoint& p = model_.point(point.points.at(0));
  const std::string x = FormatX(p.x);
  const std::string y = FormatY(p.y);
  const std::string& series = model_.series_name(p.series);
  std::string text = move == MoveKind::kAdjacent ? y + ", " + x : x + ", " + y;
  return text + ", " + series + FilterSuffix(filter);
}

std::string Narrator::FormatBinInterval(const SemanticNode& bin) const {
  const Interval& iv = bin.BinInterval();
  const bool x_axis = bin.axis == Axis::kX;
  const std::string lo = x_axis ? FormatX(iv.lo) : FormatY(iv.lo);
  const std::string hi = x_axis ? FormatX(iv.hi) : FormatY(iv.hi);
  return lo == hi ? lo : lo + " to " + hi;
}

std::string Narrator::DescribeBin(const SemanticNode& bin, std::size_t total_points) const {
  const std::size_t count = bin.points.size();
  const double fraction =
      total_points ? static_cast<double>(count) / static_cast<double>(total_points) : 0.0;
  const long percent = std::lround(100.0 * fraction);
  return FormatBinInterval(bin) + ": " + std::to_string(percent) + "% of data points, " +
         std::string(DensityLabel::FromFraction(fraction).Phrase());
}

std::string Narrator::DescribeCell(const SemanticNode& cell, std::size_t max_cell_count) const {
  const std::size_t count = cell.points.size();
  if (count == 0) return "no data points";
  const double fraction =
      static_cast<double>(count) / static_cast<double>(std::max(max_cell_count, count));
  return PointCount(count) + ", " + std::string(DensityLabel::FromFraction(fraction).Phrase());
}

std::string Narrator::DescribeSeriesInBin(const SemanticNode& series,
                                          const SeriesFilter& filter) const {
  const std::string& name = model_.series_name(series.series);
  if (!filter.is_visible(series.series)) return name + ", hidden";
  const std::size_t bin_total = tree_.node(*series.parent).points.size();
  const std::size_t count = series.points.size();
  if (count == 0) return name + ", no data points";
  const double fraction = static_cast<double>(count) / static_cast<double>(bin_total);
  return name + ", " + PointCount(count) + " in this bin, " +
         std::string(DensityLabel::FromFraction(fraction).Phrase());
}

std::string Narrator::NarrateZone(const SemanticNode& zone) const {
  switch (zone.zone) {
    case ZoneKind::kXAxis:
      return "X axis area";
    case ZoneKind::kYAxis:
      return "Y axis area";
    case ZoneKind::kDataPoints:
      return "Data points area";
    case ZoneKind::kFilters:
      return "Filters area";
  }
  return "X axis area";
}

std::string Narrator::NarrateOverview() const {
  const ChartSpec& spec = model_.spec();
  std::string text = spec.title.empty() ? std::string("Untitled chart") : spec.title;
  std::string kind(ToString(spec.kind));
  kind[0] = static_cast<char>(kind[0] - 'a' + 'A');
  text += ". " + kind + " chart, X axis " + spec.x_label + ", Y axis " + spec.y_label + ". ";
  text += std::to_string(spec.series_names.size()) + " series: " +
          JoinNames(spec.series_names) + ".";
  return text;
}

std::string Narrator::NarrateToggle(const SemanticNode& toggle, const SeriesFilter& filter) const {
  return model_.series_name(toggle.series) +
         (filter.is_visible(toggle.series) ? ", shown" : ", hidden");
}

std::string Narrator::Narrate(NodeId id, MoveKind move, const SeriesFilter& filter) const {
  const SemanticNode& n = tree_.node(id);
  switch (n.level) {
    case NodeLevel::kOverview:
      return NarrateOverview();
    case NodeLevel::kZone:
      return NarrateZone(n);
    case NodeLevel::kBin:
      return DescribeBin(n, tree_.total_points());
    case NodeLevel::kSeriesInBin:
      return DescribeSeriesInBin(n, filter);
    case NodeLevel::kCell:
      return DescribeCell(n, tree_.max_cell_count(n.axis));
    case NodeLevel::kPoint:
      return NarratePoint(n, move, filter);
    case NodeLevel::kSeriesToggle:
      return NarrateToggle(n, filter);
  }
  return {};
}

}  // namespace chartnav
