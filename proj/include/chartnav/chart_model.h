#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chartnav {

enum class ChartKind { kLine, kBar, kScatter };
enum class XKind { kNumeric, kTemporal, kCategorical };

std::string_view ToString(ChartKind kind);
std::string_view ToString(XKind kind);
ChartKind ParseChartKind(std::string_view text);
XKind ParseXKind(std::string_view text);

// Raised for invalid chart specs and unreadable datasets.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChartSpec {
  ChartKind kind = ChartKind::kLine;
  std::string title;
  std::string x_label;
  std::string y_label;
  XKind x_kind = XKind::kNumeric;
  std::vector<std::string> series_names;

  // CSV header names. An empty x/y column selects the first/second column;
  // an empty series column selects the third column when there is more than
  // one series and otherwise assigns every row to the only series.
  std::string x_column;
  std::string y_column;
  std::string series_column;

  // Throws DatasetError when an invariant does not hold.
  void Validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double span() const { return hi - lo; }
  double center() const { return lo + 0.5 * (hi - lo); }
  bool Contains(double v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Exact [min, max] expanded by 5% of the span on both sides. A zero span is
// replaced by max(|value|, 1) first so single-valued data stays touchable.
Interval PaddedRange(double min_value, double max_value);

// Index of a point in ChartModel::points().
struct PointId {
  std::uint32_t value = 0;
  auto operator<=>(const PointId&) const = default;
};

struct DataPoint {
  // Ordinal index for categorical x, days since 1970-01-01 for temporal x.
  double x = 0.0;
  double y = 0.0;
  std::size_t series = 0;
};

struct DataCoord {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const DataCoord&, const DataCoord&) = default;
};

// Logical pixels, origin top-left, y grows downward.
struct ScreenPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const ScreenPoint&, const ScreenPoint&) = default;
};

struct ScreenSize {
  int width = 480;
  int height = 800;
  friend bool operator==(const ScreenSize&, const ScreenSize&) = default;
};

struct Viewport {
  Interval x;
  Interval y;
  friend bool operator==(const Viewport&, const Viewport&) = default;
};

class ChartModel {
 public:
  ChartModel(ChartSpec spec, std::vector<DataPoint> points,
             std::vector<std::string> categories);

  const ChartSpec& spec() const { return spec_; }
  ChartKind kind() const { return spec_.kind; }
  const std::vector<DataPoint>& points() const { return points_; }
  const DataPoint& point(PointId id) const { return points_.at(id.value); }
  std::size_t series_count() const { return spec_.series_names.size(); }
  const std::string& series_name(std::size_t series) const {
    return spec_.series_names.at(series);
  }
  const Interval& x_range() const { return x_range_; }
  const Interval& y_range() const { return y_range_; }
  Viewport full_viewport() const { return {x_range_, y_range_}; }

  // Categorical x labels in first-appearance order (empty otherwise).
  const std::vector<std::string>& categories() const { return categories_; }

  // Point ids of one series, sorted by x then y then id.
  std::vector<PointId> SeriesPoints(std::size_t series) const;
  std::size_t SeriesSize(std::size_t series) const;

 private:
  ChartSpec spec_;
  std::vector<DataPoint> points_;
  std::vector<std::string> categories_;
  Interval x_range_;
  Interval y_range_;
};

ChartModel ParseDataset(std::string_view csv_text, const ChartSpec& spec);

ScreenPoint DataToScreen(DataCoord p, const Viewport& vp, ScreenSize screen);
DataCoord ScreenToData(ScreenPoint q, const Viewport& vp, ScreenSize screen);

// Days since 1970-01-01 for an ISO-8601 calendar date ("2022-01-31"). A
// trailing time component ("T12:00:00...") is accepted and ignored.
std::int64_t ParseIsoDate(std::string_view text);
// Inverse of ParseIsoDate, as "YYYY-MM-DD".
std::string FormatIsoDate(std::int64_t days);

}  // namespace chartnav
