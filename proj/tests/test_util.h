#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "chartnav/chart_model.h"
#include "chartnav/interaction.h"

namespace testutil {

inline std::filesystem::path DataDir() { return CHARTNAV_TEST_DATA_DIR; }
inline std::filesystem::path RepoDataDir() { return CHARTNAV_REPO_DATA_DIR; }

inline chartnav::ChartSpec ScatterSpec(std::vector<std::string> series) {
  chartnav::ChartSpec spec;
  spec.kind = chartnav::ChartKind::kScatter;
  spec.title = "Test scatter";
  spec.x_label = "X";
  spec.y_label = "Y";
  spec.series_names = std::move(series);
  return spec;
}

inline chartnav::ChartModel Scatter(const std::vector<chartnav::DataPoint>& points,
                                    std::vector<std::string> series = {"a", "b"}) {
  return chartnav::ChartModel(ScatterSpec(std::move(series)), points, {});
}

inline chartnav::ChartModel Line(const std::vector<chartnav::DataPoint>& points,
                                 std::vector<std::string> series = {"s"}) {
  chartnav::ChartSpec spec;
  spec.kind = chartnav::ChartKind::kLine;
  spec.title = "Test line";
  spec.x_label = "X";
  spec.y_label = "Y";
  spec.series_names = std::move(series);
  return chartnav::ChartModel(spec, points, {});
}

inline chartnav::ChartModel RandomScatter(std::mt19937_64& rng, std::size_t n,
                                          std::size_t series_count) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<chartnav::DataPoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), i % series_count});
  std::vector<std::string> names;
  for (std::size_t s = 0; s < series_count; ++s) names.push_back("s" + std::to_string(s));
  return Scatter(pts, names);
}

// Daily series 2022-01-01 .. 2022-03-03.
inline std::string DailyCsv() {
  std::string csv = "date,cases\n";
  const std::int64_t start = chartnav::ParseIsoDate("2022-01-01");
  for (int d = 0; d < 62; ++d) {
    csv += chartnav::FormatIsoDate(start + d) + "," + std::to_string(100 + (d * 37) % 90) + "\n";
  }
  return csv;
}

inline chartnav::ChartModel DailyModel() {
  chartnav::ChartSpec spec;
  spec.kind = chartnav::ChartKind::kLine;
  spec.title = "Daily cases";
  spec.x_label = "Date";
  spec.y_label = "Cases";
  spec.x_kind = chartnav::XKind::kTemporal;
  spec.series_names = {"WA"};
  return chartnav::ParseDataset(DailyCsv(), spec);
}

template <typename T>
const T* As(const chartnav::FeedbackEvent& f) {
  return std::get_if<T>(&f.payload);
}

}  // namespace testutil
