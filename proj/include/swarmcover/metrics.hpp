#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "swarmcover/core.hpp"
#include "swarmcover/world.hpp"

namespace swarmcover::metrics {

inline double completeness(const world::CoverageGrid& grid) {
  return 100.0 * grid.visited_count() / grid.cell_count();
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t c = v.size();
  if (c % 2 == 1) return v[c / 2];
  return 0.5 * (v[c / 2 - 1] + v[c / 2]);
}

// coverage uniformity: p = sum_i sqrt(|v_i - median(v)|) / c; 0 is perfectly
// uniform. The even-count median is the midpoint of the two central order
// statistics.
inline double uniformity(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double m = median_of(v);
  double sum = 0.0;
  for (double x : v) sum += std::sqrt(std::abs(x - m));
  return sum / static_cast<double>(v.size());
}

inline double uniformity(const world::CoverageGrid& grid, double unit_scale = 1.0) {
  std::vector<double> v;
  v.reserve(grid.visit_vector().size());
  for (auto t : grid.visit_vector()) v.push_back(static_cast<double>(t) * unit_scale);
  return uniformity(v);
}

inline double distance_per_sqm(const std::vector<double>& odometers,
                               const world::Arena& arena) {
  double total = 0.0;
  for (double d : odometers) total += d;
  return total / (arena.side_m * arena.side_m);
}

struct UniformitySample {
  std::int64_t tick = 0;
  double p_ticks = 0.0;
  double p_seconds = 0.0;
};

struct MetricsSeries {
  std::vector<double> completeness_pct;            // per tick
  std::vector<std::int64_t> messages_total;        // cumulative, per tick
  std::vector<std::int64_t> messages_max_per_robot;  // per tick
  std::vector<std::int64_t> collisions_total;      // cumulative, per tick
  std::vector<double> distance_total;              // cumulative meters, per tick
  std::vector<UniformitySample> uniformity_samples;
};

}  // namespace swarmcover::metrics
