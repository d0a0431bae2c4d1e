#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "swarmcover/core.hpp"

namespace swarmcover::world {

struct Arena {
  double side_m = 4.0;
  int grid_n = 16;

  double cell_m() const { return side_m / grid_n; }
  int cell_count() const { return grid_n * grid_n; }
};

struct Obstacle {
  Vec2 center;
  double orientation = 0.0;  // radians
  double half_side = 0.02;   // 4x4 cm footprint

  std::array<Vec2, 4> corners() const {
    std::array<Vec2, 4> out;
    const Vec2 ex = heading_vec(orientation) * half_side;
    const Vec2 ey = Vec2{-ex.y, ex.x};
    out[0] = center + ex + ey;
    out[1] = center - ex + ey;
    out[2] = center - ex - ey;
    out[3] = center + ex - ey;
    return out;
  }

  // signed distance from a point to the square footprint (negative inside)
  double signed_distance(const Vec2& p) const {
    Vec2 d = p - center;
    Vec2 local{d.x * std::cos(-orientation) - d.y * std::sin(-orientation),
               d.x * std::sin(-orientation) + d.y * std::cos(-orientation)};
    double qx = std::abs(local.x) - half_side;
    double qy = std::abs(local.y) - half_side;
    double ox = std::max(qx, 0.0), oy = std::max(qy, 0.0);
    return std::sqrt(ox * ox + oy * oy) + std::min(std::max(qx, qy), 0.0);
  }

  // closest point on the footprint boundary to p
  Vec2 closest_point(const Vec2& p) const {
    Vec2 d = p - center;
    double c = std::cos(-orientation), s = std::sin(-orientation);
    Vec2 local{d.x * c - d.y * s, d.x * s + d.y * c};
    Vec2 clamped{std::clamp(local.x, -half_side, half_side),
                 std::clamp(local.y, -half_side, half_side)};
    if (clamped.x == local.x && clamped.y == local.y) {
      // inside: project to nearest face
      double dx = half_side - std::abs(local.x);
      double dy = half_side - std::abs(local.y);
      if (dx < dy)
        clamped.x = local.x >= 0 ? half_side : -half_side;
      else
        clamped.y = local.y >= 0 ? half_side : -half_side;
    }
    double c2 = std::cos(orientation), s2 = std::sin(orientation);
    return center + Vec2{clamped.x * c2 - clamped.y * s2,
                         clamped.x * s2 + clamped.y * c2};
  }
};

// surface-to-surface clearance between two square footprints.
// Footprints at paper densities are small; corner-to-edge sampling over the
// polygon pair is exact for convex quads.
inline double obstacle_clearance(const Obstacle& a, const Obstacle& b) {
  double best = 1e9;
  for (const Vec2& c : a.corners()) best = std::min(best, b.signed_distance(c));
  for (const Vec2& c : b.corners()) best = std::min(best, a.signed_distance(c));
  // edge-edge minima coincide with corner-face minima for disjoint boxes; the
  // overlap case is captured by negative signed distances above.
  return best;
}

struct CellIndex {
  int col = 0;
  int row = 0;
  bool operator==(const CellIndex&) const = default;
};

// floor convention with points exactly on interior gridlines owned by the
// higher-index cell; the outer boundary belongs to the outermost cells.
inline std::optional<CellIndex> cell_of(const Vec2& p, const Arena& arena) {
  if (p.x < 0.0 || p.y < 0.0 || p.x > arena.side_m || p.y > arena.side_m)
    return std::nullopt;
  const double cell = arena.cell_m();
  int col = static_cast<int>(std::floor(p.x / cell));
  int row = static_cast<int>(std::floor(p.y / cell));
  col = std::min(col, arena.grid_n - 1);
  row = std::min(row, arena.grid_n - 1);
  return CellIndex{col, row};
}

class CoverageGrid {
 public:
  explicit CoverageGrid(const Arena& arena)
      : grid_n_(arena.grid_n), visits_(arena.cell_count(), 0) {}

  void record_visit(const CellIndex& cell, std::int64_t dt_ticks) {
    auto& v = visits_[cell.row * grid_n_ + cell.col];
    if (v == 0 && dt_ticks > 0) ++visited_count_;
    v += dt_ticks;
  }

  std::int64_t visits(const CellIndex& cell) const {
    return visits_[cell.row * grid_n_ + cell.col];
  }
  const std::vector<std::int64_t>& visit_vector() const { return visits_; }
  bool visited(const CellIndex& cell) const { return visits(cell) > 0; }

  std::int64_t total_visits() const {
    std::int64_t s = 0;
    for (auto v : visits_) s += v;
    return s;
  }
  int visited_count() const { return visited_count_; }
  int cell_count() const { return grid_n_ * grid_n_; }

 private:
  int grid_n_;
  int visited_count_ = 0;
  std::vector<std::int64_t> visits_;
};

struct Pose {
  Vec2 position;
  double theta = 0.0;
};

struct Rect {
  Vec2 min;
  Vec2 max;
  bool contains(const Vec2& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

constexpr double kObstacleBoundaryBuffer = 0.15;
constexpr double kObstacleClearance = 0.15;
constexpr std::int64_t kDefaultAttemptCap = 1000000;

namespace detail {

inline bool obstacle_feasible(const Obstacle& cand, const std::vector<Obstacle>& placed,
                              std::size_t skip, const Arena& arena) {
  for (const Vec2& c : cand.corners()) {
    if (c.x < kObstacleBoundaryBuffer || c.y < kObstacleBoundaryBuffer ||
        c.x > arena.side_m - kObstacleBoundaryBuffer ||
        c.y > arena.side_m - kObstacleBoundaryBuffer)
      return false;
  }
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (i == skip) continue;
    // clearance cannot be violated beyond the diagonal bound
    if (distance(cand.center, placed[i].center) >
        kObstacleClearance + 4.0 * cand.half_side)
      continue;
    if (obstacle_clearance(cand, placed[i]) < kObstacleClearance) return false;
  }
  return true;
}

}  // namespace detail

// Rejection sampling with local relaxation sweeps. Pure rejection jams near
// 250 obstacles at the 15 cm buffers (random sequential adsorption limit), so
// when insertions stall the placed obstacles are shaken by small accepted
// displacements until voids open. Deterministic for a fixed stream.
inline std::vector<Obstacle> place_obstacles(RngStream& rng, int count,
                                             const Arena& arena,
                                             std::int64_t attempt_cap = kDefaultAttemptCap) {
  std::vector<Obstacle> placed;
  placed.reserve(count);
  std::int64_t rejections = 0;
  std::int64_t consecutive = 0;
  while (static_cast<int>(placed.size()) < count) {
    Obstacle cand;
    cand.center = {rng.uniform(0.0, arena.side_m), rng.uniform(0.0, arena.side_m)};
    cand.orientation = rng.angle();
    if (detail::obstacle_feasible(cand, placed, placed.size(), arena)) {
      placed.push_back(cand);
      consecutive = 0;
      continue;
    }
    if (++rejections >= attempt_cap)
      throw PlacementInfeasible("obstacle placement exceeded attempt cap");
    if (++consecutive >= 120 && !placed.empty()) {
      for (std::size_t i = 0; i < placed.size(); ++i) {
        Obstacle moved = placed[i];
        moved.center += heading_vec(rng.angle()) * (0.04 * rng.uniform());
        moved.orientation += rng.uniform(-0.3, 0.3);
        if (detail::obstacle_feasible(moved, placed, i, arena)) placed[i] = moved;
      }
      consecutive = 0;
    }
  }
  return placed;
}

inline std::vector<Pose> place_robots(RngStream& rng, int n, const Rect& region,
                                      double robot_radius = 0.025,
                                      std::int64_t attempt_cap = kDefaultAttemptCap) {
  std::vector<Pose> placed;
  placed.reserve(n);
  std::int64_t rejections = 0;
  while (static_cast<int>(placed.size()) < n) {
    Pose cand;
    cand.position = {rng.uniform(region.min.x, region.max.x),
                     rng.uniform(region.min.y, region.max.y)};
    cand.theta = rng.angle();
    bool ok = true;
    for (const Pose& p : placed) {
      if (distance(cand.position, p.position) < 2.0 * robot_radius) {
        ok = false;
        break;
      }
    }
    if (ok) {
      placed.push_back(cand);
    } else if (++rejections >= attempt_cap) {
      throw PlacementInfeasible("robot placement exceeded attempt cap");
    }
  }
  return placed;
}

// Default start region: 1.0 m along the west wall x 1.25 m into the arena,
// centered on the wall midpoint.
inline Rect default_start_region(const Arena& arena) {
  double mid = arena.side_m / 2.0;
  return Rect{{0.0, mid - 0.5}, {1.25, mid + 0.5}};
}

}  // namespace swarmcover::world
