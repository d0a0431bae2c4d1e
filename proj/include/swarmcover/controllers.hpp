#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "swarmcover/bodies.hpp"
#include "swarmcover/core.hpp"
#include "swarmcover/world.hpp"

namespace swarmcover::controllers {

constexpr double kConeHalfAngle = kPi / 3.0;  // 60 degrees
constexpr double kFormationPitch = 0.25;
constexpr double kZigzagOffset = 0.125;
constexpr double kUavAnchorPitch = 0.375;
constexpr double kSlotGain = 2.0;  // s^-1, proportional slot controller
constexpr double kDetourRadius = 0.08;

struct WheelCommand {
  double left = 0.0;
  double right = 0.0;
};

// ---------------------------------------------------------------------------
// shared steering

inline double rim_turn_rate(double cruise, double wheel_base) {
  return 2.0 * cruise / wheel_base;
}

// rotate in place toward `target_heading`; the final partial step lands on it
// exactly
inline WheelCommand rotate_toward(double heading, double target_heading, double dt,
                                  double cruise = bodies::kCruiseSpeed,
                                  double wheel_base = bodies::kWheelBase) {
  double err = wrap_angle(target_heading - heading);  // ccw positive
  double max_step = rim_turn_rate(cruise, wheel_base) * dt;
  double step = std::clamp(err, -max_step, max_step);
  double wheel = step / dt * wheel_base / 2.0;
  return {-wheel, wheel};
}

inline bool heading_aligned(double heading, double target_heading, double tol = 1e-9) {
  return std::abs(wrap_angle(target_heading - heading)) <= tol;
}

// reversing is blind (the sensing cone faces forward), so it is only allowed
// with no wall or obstacle surface anywhere in sensing range
inline bool surfaces_clear(const std::vector<bodies::SurfaceHit>& hits) {
  for (const auto& h : hits)
    if (h.det.kind != bodies::DetectionKind::Robot) return false;
  return true;
}

// Proportional heading controller toward a point, speed capped at cruise.
// Drives in reverse when the target falls behind so a slot that swings
// around a formation corner is tracked without a half-turn transient.
inline WheelCommand steer_to(const world::Pose& pose, const Vec2& target, double dt,
                             double gain = kSlotGain,
                             double cruise = bodies::kCruiseSpeed,
                             double wheel_base = bodies::kWheelBase,
                             bool allow_reverse = true) {
  Vec2 d = target - pose.position;
  double dist = d.norm();
  if (dist < 0.002) return {0.0, 0.0};
  double err = wrap_angle(d.angle() - pose.theta);
  double dir = 1.0;
  if (allow_reverse && std::abs(err) > kPi / 2.0) {
    dir = -1.0;
    err = wrap_angle(err - kPi);
  }
  if (std::abs(err) > 1.0) {
    double facing = dir > 0.0 ? d.angle() : wrap_angle(d.angle() + kPi);
    return rotate_toward(pose.theta, facing, dt, cruise, wheel_base);
  }
  double v = dir * std::min(cruise, gain * dist) * std::max(0.0, std::cos(err));
  double omega = gain * err;
  double l = v - omega * wheel_base / 2.0;
  double r = v + omega * wheel_base / 2.0;
  double m = std::max(std::abs(l), std::abs(r));
  if (m > cruise) {
    l *= cruise / m;
    r *= cruise / m;
  }
  return {l, r};
}

// nearest scan hit of the given kinds inside the 60-degree cone
inline const bodies::SurfaceHit* nearest_in_cone(
    const std::vector<bodies::SurfaceHit>& hits, bool boundaries, bool obstacles,
    bool robots) {
  const bodies::SurfaceHit* best = nullptr;
  for (const auto& h : hits) {
    if (std::abs(h.det.bearing) > kConeHalfAngle) continue;
    if (h.det.kind == bodies::DetectionKind::Boundary && !boundaries) continue;
    if (h.det.kind == bodies::DetectionKind::Obstacle && !obstacles) continue;
    if (h.det.kind == bodies::DetectionKind::Robot && !robots) continue;
    if (!best || h.det.range < best->det.range) best = &h;
  }
  return best;
}

// ---------------------------------------------------------------------------
// decentralized (random billiards + reactive avoidance)

enum class DecentralizedMode { Cruise, BoundaryTurn, ObstacleTurn };

struct DecentralizedState {
  DecentralizedMode mode = DecentralizedMode::Cruise;
  double target_heading = 0.0;  // BoundaryTurn
  int turn_sign = 1;            // ObstacleTurn: +1 ccw (left), -1 cw (right)
};

inline WheelCommand decentralized_step(const bodies::GroundRobot& robot,
                                       const std::vector<bodies::SurfaceHit>& hits,
                                       DecentralizedState& state, RngStream& rng,
                                       double dt) {
  const double cruise = robot.cruise_speed;
  const double rim = cruise;

  if (state.mode == DecentralizedMode::BoundaryTurn) {
    if (heading_aligned(robot.pose.theta, state.target_heading)) {
      state.mode = DecentralizedMode::Cruise;
    } else {
      return rotate_toward(robot.pose.theta, state.target_heading, dt, cruise,
                           robot.wheel_base);
    }
  }

  const bodies::SurfaceHit* obj = nearest_in_cone(hits, true, true, true);
  if (state.mode == DecentralizedMode::ObstacleTurn) {
    const bodies::SurfaceHit* blocker = nearest_in_cone(hits, false, true, true);
    if (blocker) {
      double w = state.turn_sign * rim;
      return {-w, w};
    }
    state.mode = DecentralizedMode::Cruise;
    obj = nearest_in_cone(hits, true, false, false);
  }

  if (!obj) return {cruise, cruise};

  if (obj->det.kind == bodies::DetectionKind::Boundary) {
    // reflect: new heading uniform over the half-plane facing away from the
    // boundary
    Vec2 inward = (robot.pose.position - obj->closest).normalized();
    state.mode = DecentralizedMode::BoundaryTurn;
    state.target_heading =
        wrap_angle(inward.angle() + rng.uniform(-kPi / 2.0, kPi / 2.0));
    return rotate_toward(robot.pose.theta, state.target_heading, dt, cruise,
                         robot.wheel_base);
  }
  // obstacle or robot: left object (negative bearing) -> turn right, else left
  state.mode = DecentralizedMode::ObstacleTurn;
  state.turn_sign = (obj->det.bearing < 0.0) ? -1 : +1;
  double w = state.turn_sign * rim;
  return {-w, w};
}

// ---------------------------------------------------------------------------
// formation slots and UAV anchors

struct FormationSlot {
  int robot_id = 0;
  Vec2 offset;  // reference frame: x forward, y to the left
};

inline std::vector<FormationSlot> formation_slots(const std::vector<int>& robot_ids) {
  std::vector<FormationSlot> slots(robot_ids.size());
  const double half = (static_cast<double>(robot_ids.size()) - 1.0) / 2.0;
  for (std::size_t i = 0; i < robot_ids.size(); ++i) {
    slots[i].robot_id = robot_ids[i];
    slots[i].offset = {(i % 2 == 0) ? kZigzagOffset : -kZigzagOffset,
                       (static_cast<double>(i) - half) * kFormationPitch};
  }
  return slots;
}

// Lateral anchor per UAV id. The brain (smallest id) takes the central
// position; the rest alternate outward so adjacent anchors differ by one
// chain hop.
struct UavAnchor {
  int uav_id = 0;
  int position_index = 0;  // 0..u-1 along the line
  double lateral = 0.0;
};

inline std::vector<UavAnchor> uav_anchors(int n_uavs) {
  std::vector<UavAnchor> anchors(n_uavs);
  int center = (n_uavs - 1) / 2;
  std::vector<int> pos_of_id(n_uavs, -1);
  std::vector<bool> taken(n_uavs, false);
  for (int id = 0; id < n_uavs; ++id) {
    int offset = (id + 1) / 2;
    int pos = (id % 2 == 1) ? center - offset : center + offset;
    if (pos < 0 || pos >= n_uavs || taken[pos]) {
      for (pos = 0; pos < n_uavs && taken[pos]; ++pos) {}
    }
    taken[pos] = true;
    pos_of_id[id] = pos;
  }
  const double half = (static_cast<double>(n_uavs) - 1.0) / 2.0;
  for (int id = 0; id < n_uavs; ++id) {
    anchors[id].uav_id = id;
    anchors[id].position_index = pos_of_id[id];
    anchors[id].lateral = (static_cast<double>(pos_of_id[id]) - half) * kUavAnchorPitch;
  }
  return anchors;
}

// ---------------------------------------------------------------------------
// brain / leader perimeter sweep

// Deterministic counterclockwise perimeter program: hold at the entry point
// while the formation establishes, then sweep the square loop at 1.0 m wall
// offset. Entry is mid south leg so the final leg runs east-west.
class SweepProgram {
 public:
  SweepProgram() = default;
  SweepProgram(const world::Arena& arena, double hold_s, double leg_speed,
               double corner_rate, double tail_s = 0.0)
      : hold_s_(hold_s), leg_speed_(leg_speed), corner_rate_(corner_rate) {
    const double off = 1.0;
    const double lo = off, hi = arena.side_m - off;
    const Vec2 entry{arena.side_m / 2.0, lo};
    segments_.clear();
    add_hold(entry, 0.0, hold_s_);
    add_leg(entry, {hi, lo}, 0.0);
    add_turn({hi, lo}, 0.0, kPi / 2.0);
    add_leg({hi, lo}, {hi, hi}, kPi / 2.0);
    add_turn({hi, hi}, kPi / 2.0, kPi);
    add_leg({hi, hi}, {lo, hi}, kPi);
    add_turn({lo, hi}, kPi, 3.0 * kPi / 2.0);
    add_leg({lo, hi}, {lo, lo}, 3.0 * kPi / 2.0);
    add_turn({lo, lo}, 3.0 * kPi / 2.0, 2.0 * kPi);
    add_leg({lo, lo}, entry, 2.0 * kPi);
    // hold at the end so stragglers retracing their slot paths can finish
    // before the round closes
    if (tail_s > 0.0) add_hold(entry, 2.0 * kPi, tail_s);
  }

  world::Pose pose_at(double t_seconds) const {
    world::Pose pose;
    for (const auto& seg : segments_) {
      if (t_seconds <= seg.duration || &seg == &segments_.back()) {
        double u = std::clamp(seg.duration > 0.0 ? t_seconds / seg.duration : 1.0, 0.0, 1.0);
        pose.position = seg.from + (seg.to - seg.from) * u;
        pose.theta = wrap_angle(seg.theta_from + (seg.theta_to - seg.theta_from) * u);
        return pose;
      }
      t_seconds -= seg.duration;
    }
    return pose;
  }

  double duration_s() const {
    double total = 0.0;
    for (const auto& seg : segments_) total += seg.duration;
    return total;
  }
  std::int64_t duration_ticks(double dt) const {
    return static_cast<std::int64_t>(std::ceil(duration_s() / dt));
  }
  double hold_s() const { return hold_s_; }

 private:
  struct Segment {
    Vec2 from, to;
    double theta_from = 0.0, theta_to = 0.0;
    double duration = 0.0;
  };
  void add_hold(const Vec2& p, double theta, double duration) {
    segments_.push_back({p, p, theta, theta, duration});
  }
  void add_leg(const Vec2& a, const Vec2& b, double theta) {
    segments_.push_back({a, b, theta, theta, distance(a, b) / leg_speed_});
  }
  void add_turn(const Vec2& p, double theta_a, double theta_b) {
    segments_.push_back({p, p, theta_a, theta_b, (theta_b - theta_a) / corner_rate_});
  }

  double hold_s_ = 0.0;
  double leg_speed_ = 0.06;
  double corner_rate_ = 0.062;
  std::vector<Segment> segments_;
};

inline Vec2 reference_to_world(const world::Pose& ref, const Vec2& offset) {
  Vec2 h = heading_vec(ref.theta);
  Vec2 left{-h.y, h.x};
  return ref.position + h * offset.x + left * offset.y;
}

// Supervisors clamp instructed targets to positions a robot body can reach;
// wall-side slots otherwise sit outside the arena.
inline Vec2 clamp_instruction(Vec2 p, const world::Arena& arena, double margin = 0.03) {
  p.x = std::clamp(p.x, margin, arena.side_m - margin);
  p.y = std::clamp(p.y, margin, arena.side_m - margin);
  return p;
}

inline Vec2 slot_instruction(const world::Pose& ref, const Vec2& offset,
                             const world::Arena& arena) {
  return clamp_instruction(reference_to_world(ref, offset), arena);
}

// ---------------------------------------------------------------------------
// formation follower (hybrid / centralized ground robot)

struct FollowerState {
  bool avoiding = false;
  int turn_sign = 1;        // latched for the whole avoidance episode
  double escape_dist = 0.0;  // forward travel since the cone last cleared
};

constexpr double kEscapeCommit = 0.08;  // meters of straight escape after clearing

// Alg-2 follower: an obstacle in the cone triggers a turn away from its side.
// The turn direction latches for the whole episode and the robot commits to a
// short straight escape once the cone clears, so the slot chase cannot rotate
// it straight back into the same obstacle (or oscillate between two).
inline WheelCommand formation_follower_step(const bodies::GroundRobot& robot,
                                            const std::vector<bodies::SurfaceHit>& hits,
                                            const std::optional<Vec2>& instruction,
                                            FollowerState& state, double dt) {
  const bodies::SurfaceHit* obstacle = nearest_in_cone(hits, false, true, false);
  if (obstacle) {
    if (!state.avoiding) {
      state.avoiding = true;
      state.turn_sign = (obstacle->det.bearing < 0.0) ? -1 : +1;
    }
    state.escape_dist = 0.0;
    double w = state.turn_sign * robot.cruise_speed;
    return {-w, w};
  }
  if (state.avoiding) {
    bool ahead = false;
    for (const auto& h : hits)
      if (h.det.kind == bodies::DetectionKind::Obstacle &&
          std::abs(h.det.bearing) < kPi / 2.0)
        ahead = true;
    if (ahead || state.escape_dist < kEscapeCommit) {
      state.escape_dist += robot.cruise_speed * dt;
      return {robot.cruise_speed, robot.cruise_speed};
    }
    state.avoiding = false;
  }
  if (!instruction) return {0.0, 0.0};
  return steer_to(robot.pose, *instruction, dt, kSlotGain, robot.cruise_speed,
                  robot.wheel_base, surfaces_clear(hits));
}

// ---------------------------------------------------------------------------
// lane decomposition (predetermined approach)

struct Lane {
  int robot_id = 0;
  int first_column = 0;
  int last_column = 0;
  std::vector<Vec2> waypoints;  // transit waypoint first, then the sweep
  int transit_count = 1;
};

struct LanePlan {
  std::vector<Lane> lanes;
};

// sweep-direction flips along the column axis, transit excluded
inline int lane_reversal_count(const Lane& lane) {
  int reversals = 0;
  int last_sign = 0;
  for (std::size_t i = lane.transit_count; i < lane.waypoints.size(); ++i) {
    Vec2 seg = lane.waypoints[i] - lane.waypoints[i - 1];
    if (std::abs(seg.y) <= std::abs(seg.x)) continue;  // crossing segment
    int sign = seg.y > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++reversals;
    last_sign = sign;
  }
  return reversals;
}

inline LanePlan decompose_lanes(int n_robots, const world::Arena& arena) {
  if (n_robots < 1 || n_robots > arena.grid_n)
    throw InvalidCount("robot count must be in 1..grid_n");
  LanePlan plan;
  const int cols = arena.grid_n;
  const int base = cols / n_robots;
  const int wide = cols % n_robots;  // this many lanes get one extra column
  const double cell = arena.cell_m();
  const double y_low = 0.05;
  const double y_high = arena.side_m - 0.05;

  int next_col = 0;
  for (int i = 0; i < n_robots; ++i) {
    Lane lane;
    lane.robot_id = i;
    int width = base + (i < wide ? 1 : 0);
    lane.first_column = next_col;
    lane.last_column = next_col + width - 1;
    next_col += width;

    auto col_x = [&](int c) { return (c + 0.5) * cell; };
    lane.waypoints.push_back({col_x(lane.first_column), y_low});
    lane.transit_count = 1;
    bool up = true;
    for (int c = lane.first_column; c <= lane.last_column; ++c) {
      double target_y = up ? y_high : y_low;
      if (c != lane.first_column) lane.waypoints.push_back({col_x(c), up ? y_low : y_high});
      lane.waypoints.push_back({col_x(c), target_y});
      up = !up;
    }
    plan.lanes.push_back(std::move(lane));
  }
  return plan;
}

// ---------------------------------------------------------------------------
// predetermined follower (boustrophedon + counterclockwise half-circle detour)

struct PredeterminedState {
  std::size_t waypoint_index = 0;
  std::deque<Vec2> detour;
  Vec2 detour_center;
  int last_obstacle = -1;  // no re-trigger on it until the robot moves clear
  bool done = false;
};

inline WheelCommand predetermined_follower_step(
    const bodies::GroundRobot& robot, const std::vector<bodies::SurfaceHit>& hits,
    const Lane& lane, const std::vector<world::Obstacle>& obstacles,
    PredeterminedState& state, double dt,
    double detour_speed = bodies::kCruiseSpeed) {
  constexpr double kWaypointTol = 0.03;
  constexpr double kDetourTol = 0.025;
  constexpr double kCooldownClearance = 0.13;

  if (state.done) return {0.0, 0.0};

  if (!state.detour.empty()) {
    // the obstacle is passed once it falls behind the direction of travel to
    // the waypoint; the rest of the arc is unnecessary
    if (state.waypoint_index < lane.waypoints.size()) {
      Vec2 to_wp = lane.waypoints[state.waypoint_index] - robot.pose.position;
      Vec2 to_obs = state.detour_center - robot.pose.position;
      if (to_wp.dot(to_obs) < 0.0 && to_obs.norm() > kDetourRadius) state.detour.clear();
    }
  }
  if (!state.detour.empty()) {
    // advance along the arc; skip points the robot has effectively passed
    while (state.detour.size() > 1 &&
           (distance(robot.pose.position, state.detour.front()) < kDetourTol ||
            distance(robot.pose.position, state.detour[1]) <
                distance(robot.pose.position, state.detour.front())))
      state.detour.pop_front();
    if (state.detour.size() == 1 &&
        distance(robot.pose.position, state.detour.front()) < kDetourTol)
      state.detour.pop_front();
    if (!state.detour.empty())
      return steer_to(robot.pose, state.detour.front(), dt, kSlotGain,
                      std::min(detour_speed, robot.cruise_speed), robot.wheel_base,
                      false);
  }

  if (state.last_obstacle >= 0 &&
      obstacles[static_cast<std::size_t>(state.last_obstacle)].signed_distance(
          robot.pose.position) > kCooldownClearance)
    state.last_obstacle = -1;

  const bodies::SurfaceHit* obstacle = nullptr;
  for (const auto& h : hits) {
    if (h.det.kind != bodies::DetectionKind::Obstacle) continue;
    if (std::abs(h.det.bearing) > kConeHalfAngle) continue;
    // the cooldown obstacle re-triggers only when the robot is pressed
    // against it, which restarts the arc instead of deadlocking
    if (h.obstacle_index == state.last_obstacle &&
        !(h.det.range < 0.02 && std::abs(h.det.bearing) < 0.35))
      continue;
    if (!obstacle || h.det.range < obstacle->det.range) obstacle = &h;
  }
  if (obstacle && obstacle->obstacle_index >= 0) {
    const Vec2 center = obstacles[obstacle->obstacle_index].center;
    double entry = (robot.pose.position - center).angle();
    constexpr int kArcPoints = 8;
    for (int i = 1; i <= kArcPoints; ++i) {
      double a = entry + kPi * i / kArcPoints;  // counterclockwise
      state.detour.push_back(center + heading_vec(a) * kDetourRadius);
    }
    state.detour_center = center;
    state.last_obstacle = obstacle->obstacle_index;
    return steer_to(robot.pose, state.detour.front(), dt, kSlotGain,
                    std::min(detour_speed, robot.cruise_speed), robot.wheel_base,
                    false);
  }

  if (state.waypoint_index >= lane.waypoints.size()) {
    state.done = true;
    return {0.0, 0.0};
  }
  Vec2 wp = lane.waypoints[state.waypoint_index];
  if (distance(robot.pose.position, wp) < kWaypointTol) {
    ++state.waypoint_index;
    if (state.waypoint_index >= lane.waypoints.size()) {
      state.done = true;
      return {0.0, 0.0};
    }
    wp = lane.waypoints[state.waypoint_index];
  }
  // pursue a carrot on the lane segment so a displaced robot rejoins the
  // line instead of cutting a long diagonal to the waypoint
  Vec2 target = wp;
  if (state.waypoint_index > 0) {
    Vec2 prev = lane.waypoints[state.waypoint_index - 1];
    Vec2 seg = wp - prev;
    double len_sq = seg.norm_sq();
    if (len_sq > 1e-12) {
      double u = std::clamp((robot.pose.position - prev).dot(seg) / len_sq, 0.0, 1.0);
      double carrot = std::min(1.0, u + 0.25 / std::sqrt(len_sq));
      target = prev + seg * carrot;
    }
  }
  return steer_to(robot.pose, target, dt, kSlotGain, robot.cruise_speed,
                  robot.wheel_base, false);
}

}  // namespace swarmcover::controllers
