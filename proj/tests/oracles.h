// Reference implementations written straight from the definitions, kept
// deliberately naive so they share no code paths with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

struct Pt {
  unsigned id;
  double x;
  double y;
};

struct ScanOutcome {
  std::set<unsigned> hits;
  std::set<unsigned> newly_hit;
  double adjusted_radius;
};

// Dynamic scanning radius, one touchMoved step.
inline ScanOutcome Scan(const std::vector<Pt>& points, double px, double py, std::size_t cover,
                        double min_rad, double max_rad, const std::set<unsigned>& previous) {
  ScanOutcome out{{}, {}, min_rad};
  if (points.empty()) return out;
  std::vector<std::pair<double, unsigned>> d;
  for (const Pt& p : points) d.push_back({std::hypot(p.x - px, p.y - py), p.id});
  std::sort(d.begin(), d.end());
  const std::size_t k = std::min(cover, d.size());
  double raw = d[k - 1].first;
  out.adjusted_radius = raw < min_rad ? min_rad : (raw > max_rad ? max_rad : raw);
  for (const Pt& p : points) {
    if (std::hypot(p.x - px, p.y - py) <= out.adjusted_radius) out.hits.insert(p.id);
  }
  for (unsigned id : out.hits) {
    if (!previous.count(id)) out.newly_hit.insert(id);
  }
  return out;
}

// Index of the equal-width bin holding v: half-open, last bin closed.
inline std::size_t Bin(double lo, double hi, std::size_t n, double v) {
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double right = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n);
    if (v < right) return i;
  }
  return n - 1;
}

inline double Pitch(double v, double lo, double hi, double f_lo = 220.0, double f_hi = 1760.0) {
  const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  return f_lo * std::pow(f_hi / f_lo, t);
}

}  // namespace oracle
