#include "chartnav/chart_model.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <unordered_map>

#include "csv.h"

namespace chartnav {
namespace {

constexpr double kPaddingFraction = 0.05;

std::string RowError(std::size_t record, const std::string& message) {
  return "row " + std::to_string(record) + ": " + message;
}

double ParseNumber(std::string_view text, std::size_t record, std::string_view column) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw DatasetError(RowError(record, "column '" + std::string(column) +
                                            "' is not a finite number: '" +
                                            std::string(text) + "'"));
  }
  return value;
}

int ParseDigits(std::string_view text) {
  int value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw DatasetError("invalid date component '" + std::string(text) + "'");
  }
  return value;
}

std::size_t FindColumn(const csv::Record& header, const std::string& name,
                       std::size_t fallback, std::string_view role) {
  if (name.empty()) {
    if (fallback >= header.size()) {
      throw DatasetError("header has no column for " + std::string(role));
    }
    return fallback;
  }
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DatasetError("header has no column named '" + name + "' for " +
                       std::string(role));
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::string_view ToString(ChartKind kind) {
  switch (kind) {
    case ChartKind::kLine:
      return "line";
    case ChartKind::kBar:
      return "bar";
    case ChartKind::kScatter:
      return "scatter";
  }
  return "line";
}

std::string_view ToString(XKind kind) {
  switch (kind) {
    case XKind::kNumeric:
      return "numeric";
    case XKind::kTemporal:
      return "temporal";
    case XKind::kCategorical:
      return "categorical";
  }
  return "numeric";
}

ChartKind ParseChartKind(std::string_view text) {
  if (text == "line") return ChartKind::kLine;
  if (text == "bar") return ChartKind::kBar;
  if (text == "scatter") return ChartKind::kScatter;
  throw DatasetError("unknown chart kind '" + std::string(text) + "'");
}

XKind ParseXKind(std::string_view text) {
  if (text == "numeric") return XKind::kNumeric;
  if (text == "temporal") return XKind::kTemporal;
  if (text == "categorical") return XKind::kCategorical;
  throw DatasetError("unknown x kind '" + std::string(text) + "'");
}

void ChartSpec::Validate() const {
  if (series_names.empty()) throw DatasetError("series_names must not be empty");
  std::set<std::string> seen;
  for (const auto& name : series_names) {
    if (!seen.insert(name).second) {
      throw DatasetError("duplicate series name '" + name + "'");
    }
  }
  if (kind == ChartKind::kBar && x_kind == XKind::kNumeric) {
    throw DatasetError("bar charts need a categorical or temporal x axis");
  }
}

Interval PaddedRange(double min_value, double max_value) {
  double span = max_value - min_value;
  if (span <= 0.0) span = std::max(std::abs(min_value), 1.0);
  return {min_value - kPaddingFraction * span, max_value + kPaddingFraction * span};
}

ChartModel::ChartModel(ChartSpec spec, std::vector<DataPoint> points,
                       std::vector<std::string> categories)
    : spec_(std::move(spec)), points_(std::move(points)), categories_(std::move(categories)) {
  spec_.Validate();
  if (points_.empty()) throw DatasetError("empty dataset");
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DatasetError("data point coordinates must be finite");
    }
    if (p.series >= spec_.series_names.size()) {
      throw DatasetError("data point refers to an unknown series");
    }
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  x_range_ = PaddedRange(x_min, x_max);
  y_range_ = PaddedRange(y_min, y_max);
}

std::vector<PointId> ChartModel::SeriesPoints(std::size_t series) const {
  std::vector<PointId> ids;
  for (std::uint32_t i = 0; i < points_.size(); ++i) {
    if (points_[i].series == series) ids.push_back(PointId{i});
  }
  std::stable_sort(ids.begin(), ids.end(), [this](PointId a, PointId b) {
    const auto& pa = points_[a.value];
    const auto& pb = points_[b.value];
    if (pa.x != pb.x) return pa.x < pb.x;
    return pa.y < pb.y;
  });
  return ids;
}

std::size_t ChartModel::SeriesSize(std::size_t series) const {
  return static_cast<std::size_t>(std::count_if(
      points_.begin(), points_.end(), [series](const DataPoint& p) { return p.series == series; }));
}

ChartModel ParseDataset(std::string_view csv_text, const ChartSpec& spec) {
  spec.Validate();
  std::vector<csv::Record> records;
  try {
    records = csv::Parse(csv_text);
  } catch (const csv::CsvError& e) {
    throw DatasetError(RowError(e.record(), "malformed CSV (" + std::string(e.what()) + ")"));
  }
  if (records.empty()) throw DatasetError("empty dataset");

  const csv::Record& header = records.front();
  const std::size_t x_col = FindColumn(header, spec.x_column, 0, "x");
  const std::size_t y_col = FindColumn(header, spec.y_column, 1, "y");
  std::optional<std::size_t> series_col;
  if (!spec.series_column.empty() || spec.series_names.size() > 1) {
    series_col = FindColumn(header, spec.series_column, 2, "series");
  }

  std::unordered_map<std::string, std::size_t> series_index;
  for (std::size_t i = 0; i < spec.series_names.size(); ++i) {
    series_index.emplace(spec.series_names[i], i);
  }

  std::vector<std::string> categories;
  std::unordered_map<std::string, std::size_t> category_index;
  std::vector<DataPoint> points;
  points.reserve(records.size() - 1);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::size_t record_number = r + 1;
    const csv::Record& row = records[r];
    if (row.size() != header.size()) {
      throw DatasetError(RowError(record_number, "malformed CSV row: expected " +
                                                     std::to_string(header.size()) +
                                                     " fields, found " +
                                                     std::to_string(row.size())));
    }
    const std::string& x_text = row[x_col];
    const std::string& y_text = row[y_col];
    if (x_text.empty() || y_text.empty() || (series_col && row[*series_col].empty())) {
      throw DatasetError(RowError(record_number, "empty cell"));
    }

    DataPoint p;
    switch (spec.x_kind) {
      case XKind::kNumeric:
        p.x = ParseNumber(x_text, record_number, header[x_col]);
        break;
      case XKind::kTemporal:
        try {
          p.x = static_cast<double>(ParseIsoDate(x_text));
        } catch (const DatasetError& e) {
          throw DatasetError(RowError(record_number, e.what()));
        }
        break;
      case XKind::kCategorical: {
        auto [it, inserted] = category_index.emplace(x_text, categories.size());
        if (inserted) categories.push_back(x_text);
        p.x = static_cast<double>(it->second);
        break;
      }
    }
    p.y = ParseNumber(y_text, record_number, header[y_col]);
    if (series_col) {
      auto it = series_index.find(row[*series_col]);
      if (it == series_index.end()) {
        throw DatasetError(RowError(record_number,
                                    "unknown series '" + row[*series_col] + "'"));
      }
      p.series = it->second;
    }
    points.push_back(p);
  }
  if (points.empty()) throw DatasetError("empty dataset");
  return ChartModel(spec, std::move(points), std::move(categories));
}

ScreenPoint DataToScreen(DataCoord p, const Viewport& vp, ScreenSize screen) {
  const double fx = (p.x - vp.x.lo) / vp.x.span();
  const double fy = (vp.y.hi - p.y) / vp.y.span();
  return {fx * screen.width, fy * screen.height};
}

DataCoord ScreenToData(ScreenPoint q, const Viewport& vp, ScreenSize screen) {
  const double fx = q.x / screen.width;
  const double fy = q.y / screen.height;
  return {vp.x.lo + fx * vp.x.span(), vp.y.hi - fy * vp.y.span()};
}

std::int64_t ParseIsoDate(std::string_view text) {
  if (auto t = text.find('T'); t != std::string_view::npos) text = text.substr(0, t);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw DatasetError("expected an ISO-8601 date (YYYY-MM-DD), got '" + std::string(text) +
                       "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{ParseDigits(text.substr(0, 4))},
                           month{static_cast<unsigned>(ParseDigits(text.substr(5, 2)))},
                           day{static_cast<unsigned>(ParseDigits(text.substr(8, 2)))}};
  if (!ymd.ok()) throw DatasetError("invalid calendar date '" + std::string(text) + "'");
  return sys_days{ymd}.time_since_epoch().count();
}

std::string FormatIsoDate(std::int64_t days) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace chartnav
