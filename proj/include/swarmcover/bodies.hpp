#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "swarmcover/core.hpp"
#include "swarmcover/world.hpp"

namespace swarmcover::bodies {

constexpr double kBodyRadius = 0.025;
constexpr double kWheelBase = 0.053;
constexpr double kCruiseSpeed = 0.068;
constexpr double kSenseRange = 0.05;
constexpr int kNumProximitySensors = 12;
constexpr double kUavMaxSpeed = 0.074;
constexpr double kUavFovX = 1.5;
constexpr double kUavFovY = 1.75;
constexpr double kContactEpsilon = 1e-9;

struct GroundRobot {
  int id = 0;
  world::Pose pose;
  double body_radius = kBodyRadius;
  double wheel_base = kWheelBase;
  double cruise_speed = kCruiseSpeed;
  double sense_range = kSenseRange;
  int n_sensors = kNumProximitySensors;
  bool failed = false;
  double odometer = 0.0;
};

enum class UavRole { Brain, Inner, Supervisor };

struct Uav {
  int id = 0;
  world::Pose pose;
  double max_speed = kUavMaxSpeed;
  UavRole role = UavRole::Supervisor;
  bool unlimited_fov = false;  // centralized / predetermined supervisors

  world::Rect fov() const {
    return {{pose.position.x - kUavFovX / 2.0, pose.position.y - kUavFovY / 2.0},
            {pose.position.x + kUavFovX / 2.0, pose.position.y + kUavFovY / 2.0}};
  }
};

enum class DetectionKind { Boundary, Obstacle, Robot };

// bearing is relative to the heading, positive on the robot's right-hand
// side (an object at a negative bearing is on the left).
struct Detection {
  DetectionKind kind = DetectionKind::Boundary;
  double bearing = 0.0;
  double range = 0.0;  // surface-to-surface, <= sense_range
};

// scan result with enough identity for controllers that plan around a
// specific obstacle
struct SurfaceHit {
  Detection det;
  int obstacle_index = -1;  // valid when kind == Obstacle
  int robot_id = -1;        // valid when kind == Robot
  Vec2 closest;             // closest surface point, world frame
};

inline double bearing_to(const world::Pose& pose, const Vec2& target) {
  Vec2 h = heading_vec(pose.theta);
  Vec2 d = target - pose.position;
  return -std::atan2(h.cross(d), h.dot(d));
}

// Bin index over the arena for obstacle proximity queries.
class ObstacleIndex {
 public:
  ObstacleIndex() = default;
  ObstacleIndex(const world::Arena& arena, const std::vector<world::Obstacle>& obstacles)
      : bin_(0.25),
        n_(static_cast<int>(std::ceil(arena.side_m / bin_)) + 1),
        cells_(static_cast<std::size_t>(n_) * n_) {
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      const auto& o = obstacles[i];
      double reach = o.half_side * 1.4143;
      int cx0 = clampi(static_cast<int>((o.center.x - reach) / bin_));
      int cx1 = clampi(static_cast<int>((o.center.x + reach) / bin_));
      int cy0 = clampi(static_cast<int>((o.center.y - reach) / bin_));
      int cy1 = clampi(static_cast<int>((o.center.y + reach) / bin_));
      for (int cx = cx0; cx <= cx1; ++cx)
        for (int cy = cy0; cy <= cy1; ++cy)
          cells_[cy * n_ + cx].push_back(static_cast<int>(i));
    }
  }

  // indices of obstacles possibly within `radius` of p
  void query(const Vec2& p, double radius, std::vector<int>& out) const {
    out.clear();
    if (cells_.empty()) return;
    int cx0 = clampi(static_cast<int>((p.x - radius - 0.03) / bin_));
    int cx1 = clampi(static_cast<int>((p.x + radius + 0.03) / bin_));
    int cy0 = clampi(static_cast<int>((p.y - radius - 0.03) / bin_));
    int cy1 = clampi(static_cast<int>((p.y + radius + 0.03) / bin_));
    for (int cx = cx0; cx <= cx1; ++cx)
      for (int cy = cy0; cy <= cy1; ++cy)
        for (int idx : cells_[cy * n_ + cx]) out.push_back(idx);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

 private:
  int clampi(int v) const { return std::clamp(v, 0, n_ - 1); }
  double bin_ = 0.25;
  int n_ = 0;
  std::vector<std::vector<int>> cells_;
};

constexpr double kContactFriction = 0.0;

// Resolve the move from `start` toward candidate `p` against walls and
// obstacles. Motion is truncated at contact (no bounce, no push); the
// tangential remainder slides, reduced by Coulomb friction against the
// normal push, so a body grinding along a surface at a shallow angle loses
// speed and a head-on contact stops exactly at the surface.
inline Vec2 resolve_contacts(const Vec2& start, Vec2 p, double radius,
                             const world::Arena& arena,
                             const std::vector<world::Obstacle>& obstacles,
                             const ObstacleIndex& index) {
  static thread_local std::vector<int> nearby;
  auto apply_friction = [&](const Vec2& corrected, const Vec2& normal) {
    // remaining intended motion beyond the corrected contact point
    Vec2 rest = p - corrected;
    double push = -rest.dot(normal);
    if (push <= 0.0) return corrected + rest;
    Vec2 tangent{-normal.y, normal.x};
    double t = rest.dot(tangent);
    double mag = std::abs(t) - kContactFriction * push;
    if (mag <= 0.0) return corrected;
    return corrected + tangent * (t > 0.0 ? mag : -mag);
  };

  for (int iter = 0; iter < 4; ++iter) {
    bool contact = false;
    if (p.x < radius) {
      p = apply_friction({radius, std::clamp(start.y, radius, arena.side_m - radius)},
                         {1.0, 0.0});
      contact = true;
    } else if (p.x > arena.side_m - radius) {
      p = apply_friction({arena.side_m - radius,
                          std::clamp(start.y, radius, arena.side_m - radius)},
                         {-1.0, 0.0});
      contact = true;
    }
    if (p.y < radius) {
      p = apply_friction({std::clamp(p.x, radius, arena.side_m - radius), radius},
                         {0.0, 1.0});
      contact = true;
    } else if (p.y > arena.side_m - radius) {
      p = apply_friction({std::clamp(p.x, radius, arena.side_m - radius),
                          arena.side_m - radius},
                         {0.0, -1.0});
      contact = true;
    }
    index.query(p, radius + 0.01, nearby);
    for (int oi : nearby) {
      const auto& o = obstacles[oi];
      double sd = o.signed_distance(p);
      if (sd < radius) {
        Vec2 surf = o.closest_point(p);
        Vec2 n = (sd >= 0.0) ? (p - surf).normalized() : (surf - p).normalized();
        if (n.norm_sq() == 0.0) n = (p - o.center).normalized();
        p = apply_friction(surf + n * radius, n);
        contact = true;
      }
    }
    p.x = std::clamp(p.x, radius, arena.side_m - radius);
    p.y = std::clamp(p.y, radius, arena.side_m - radius);
    if (!contact) break;
  }
  return p;
}

// Exact arc integration of the differential drive. Motion is truncated at
// contact; the odometer accumulates the distance actually traveled.
inline GroundRobot step_differential_drive(GroundRobot robot, double left_speed,
                                           double right_speed, double dt,
                                           const world::Arena& arena,
                                           const std::vector<world::Obstacle>& obstacles,
                                           const ObstacleIndex& index) {
  if (robot.failed) return robot;
  const double v = 0.5 * (left_speed + right_speed);
  const double omega = (right_speed - left_speed) / robot.wheel_base;

  Vec2 start = robot.pose.position;
  Vec2 target;
  double new_theta = robot.pose.theta;
  if (std::abs(omega) < 1e-12) {
    target = start + heading_vec(robot.pose.theta) * (v * dt);
  } else {
    const double r = v / omega;
    const Vec2 icc = start + Vec2{-std::sin(robot.pose.theta), std::cos(robot.pose.theta)} * r;
    new_theta = robot.pose.theta + omega * dt;
    target = icc + (start - icc).rotated(omega * dt);
  }

  Vec2 resolved = resolve_contacts(start, target, robot.body_radius, arena, obstacles, index);
  robot.pose.theta = wrap_angle(new_theta);
  bool truncated = distance(resolved, target) > kContactEpsilon;
  robot.odometer += truncated ? distance(start, resolved) : std::abs(v) * dt;
  robot.pose.position = resolved;
  return robot;
}

inline std::vector<SurfaceHit> scan_surfaces(const GroundRobot& robot,
                                             const world::Arena& arena,
                                             const std::vector<world::Obstacle>& obstacles,
                                             const ObstacleIndex& index,
                                             const std::vector<GroundRobot>& others) {
  std::vector<SurfaceHit> hits;
  if (robot.failed) return hits;
  const Vec2 p = robot.pose.position;
  const double reach = robot.body_radius + robot.sense_range;

  auto add = [&](DetectionKind kind, const Vec2& closest, double surface_range,
                 int obstacle_index, int robot_id) {
    if (surface_range > robot.sense_range) return;
    SurfaceHit h;
    h.det.kind = kind;
    h.det.range = std::max(surface_range, 0.0);
    h.det.bearing = bearing_to(robot.pose, closest);
    h.obstacle_index = obstacle_index;
    h.robot_id = robot_id;
    h.closest = closest;
    hits.push_back(h);
  };

  // boundaries
  if (double r = p.x - robot.body_radius; r <= robot.sense_range)
    add(DetectionKind::Boundary, {0.0, p.y}, r, -1, -1);
  if (double r = arena.side_m - p.x - robot.body_radius; r <= robot.sense_range)
    add(DetectionKind::Boundary, {arena.side_m, p.y}, r, -1, -1);
  if (double r = p.y - robot.body_radius; r <= robot.sense_range)
    add(DetectionKind::Boundary, {p.x, 0.0}, r, -1, -1);
  if (double r = arena.side_m - p.y - robot.body_radius; r <= robot.sense_range)
    add(DetectionKind::Boundary, {p.x, arena.side_m}, r, -1, -1);

  static thread_local std::vector<int> nearby;
  index.query(p, reach + 0.03, nearby);
  for (int oi : nearby) {
    const auto& o = obstacles[oi];
    double sd = o.signed_distance(p);
    double surface_range = sd - robot.body_radius;
    if (surface_range <= robot.sense_range)
      add(DetectionKind::Obstacle, o.closest_point(p), surface_range, oi, -1);
  }

  for (const auto& other : others) {
    if (other.id == robot.id) continue;
    double surface_range =
        distance(p, other.pose.position) - robot.body_radius - other.body_radius;
    if (surface_range <= robot.sense_range)
      add(DetectionKind::Robot, other.pose.position, surface_range, -1, other.id);
  }
  return hits;
}

inline std::vector<Detection> proximity_scan(const GroundRobot& robot,
                                             const world::Arena& arena,
                                             const std::vector<world::Obstacle>& obstacles,
                                             const ObstacleIndex& index,
                                             const std::vector<GroundRobot>& others) {
  std::vector<Detection> out;
  for (const auto& h : scan_surfaces(robot, arena, obstacles, index, others))
    out.push_back(h.det);
  return out;
}

inline std::vector<int> uav_visible_robots(const Uav& uav,
                                           const std::vector<GroundRobot>& robots) {
  std::vector<int> visible;
  if (uav.unlimited_fov) {
    for (const auto& r : robots)
      if (!r.failed) visible.push_back(r.id);
    return visible;
  }
  const world::Rect fov = uav.fov();
  for (const auto& r : robots)
    if (!r.failed && fov.contains(r.pose.position)) visible.push_back(r.id);
  return visible;
}

struct CollisionEvent {
  std::int64_t tick = 0;
  int robot_a = 0;
  int robot_b = 0;
};

using ContactSet = std::set<std::pair<int, int>>;

// Edge-triggered robot-robot collision detection: an event is emitted when a
// pair transitions from non-contact to contact (center distance < 2r).
inline std::vector<CollisionEvent> detect_collisions(
    const std::vector<GroundRobot>& robots, ContactSet& contacts, std::int64_t tick) {
  std::vector<CollisionEvent> events;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    for (std::size_t j = i + 1; j < robots.size(); ++j) {
      auto key = std::make_pair(robots[i].id, robots[j].id);
      double d = distance(robots[i].pose.position, robots[j].pose.position);
      bool touching = d < robots[i].body_radius + robots[j].body_radius;
      bool was = contacts.count(key) > 0;
      if (touching && !was) {
        events.push_back({tick, key.first, key.second});
        contacts.insert(key);
      } else if (!touching && was) {
        contacts.erase(key);
      }
    }
  }
  return events;
}

}  // namespace swarmcover::bodies
