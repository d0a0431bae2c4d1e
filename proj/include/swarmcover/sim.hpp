#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "swarmcover/bodies.hpp"
#include "swarmcover/controllers.hpp"
#include "swarmcover/core.hpp"
#include "swarmcover/faults.hpp"
#include "swarmcover/metrics.hpp"
#include "swarmcover/network.hpp"
#include "swarmcover/world.hpp"

namespace swarmcover::sim {

enum class Approach { Decentralized, HybridMns, CentralizedFormation, Predetermined };

inline const char* approach_name(Approach a) {
  switch (a) {
    case Approach::Decentralized: return "decentralized";
    case Approach::HybridMns: return "hybrid_mns";
    case Approach::CentralizedFormation: return "centralized_formation";
    case Approach::Predetermined: return "predetermined";
  }
  return "?";
}

inline std::optional<Approach> approach_from_name(const std::string& s) {
  if (s == "decentralized") return Approach::Decentralized;
  if (s == "hybrid_mns" || s == "hybrid") return Approach::HybridMns;
  if (s == "centralized_formation" || s == "centralized")
    return Approach::CentralizedFormation;
  if (s == "predetermined") return Approach::Predetermined;
  return std::nullopt;
}

inline int default_uav_count(Approach a) {
  switch (a) {
    case Approach::Decentralized: return 0;
    case Approach::HybridMns: return 3;
    case Approach::CentralizedFormation: return 1;
    case Approach::Predetermined: return 1;
  }
  return 0;
}

struct SimConfig {
  Approach approach = Approach::Decentralized;
  int n_ground = 9;
  int n_uav = -1;  // -1: per-approach default
  int obstacle_count = 100;
  std::uint64_t seed = 1;
  double dt = 0.1;
  std::int64_t horizon_ticks = -1;  // -1: auto (round end; 11000 decentralized)
  faults::FailureSchedule failures;
  world::Arena arena;
  // brain sweep parameters (identical for hybrid and centralized rounds)
  double hold_s = 55.0;
  double leg_speed = 0.05;
  double corner_rate = 0.065;
  double tail_s = 25.0;
  double detour_speed = 0.045;
  bool predetermined_reports = true;
  std::optional<std::vector<world::Obstacle>> fixed_obstacles;  // replay

  int uav_count() const { return n_uav >= 0 ? n_uav : default_uav_count(approach); }
};

constexpr std::int64_t kDecentralizedHorizon = 11000;
constexpr std::int64_t kPredeterminedSafetyCap = 40000;

struct RunResult {
  std::string approach;
  std::uint64_t seed = 0;
  int n_ground = 0;
  int n_uav = 0;
  int obstacle_count = 0;
  double dt = 0.1;

  std::int64_t ticks_executed = 0;
  std::int64_t round_tick = -1;
  std::int64_t establishment_tick = -1;
  std::int64_t last_collision_tick = -1;
  std::vector<bodies::CollisionEvent> collision_events;

  metrics::MetricsSeries series;
  double completeness_at_round = 0.0;
  double completeness_final = 0.0;
  double p_round_ticks = 0.0;
  double p_round_seconds = 0.0;
  double p_final_ticks = 0.0;
  double p_final_seconds = 0.0;

  std::int64_t messages_total = 0;
  std::int64_t max_messages_per_robot = 0;
  std::int64_t collisions_total = 0;
  double distance_total = 0.0;

  network::DisconnectionReport disconnection;
  std::vector<faults::FailureRecord> failures_applied;
  std::vector<double> odometers;
  std::vector<std::int64_t> visits_final;

  // invariant trackers
  double max_slot_error_after_establishment = 0.0;
  std::int64_t caterpillar_violations = 0;  // ticks violating after first merge
  std::int64_t star_violations = 0;
};

// world setup shared by the run loop and the arena exporter
struct WorldSetup {
  world::Arena arena;
  std::vector<world::Obstacle> obstacles;
  std::vector<bodies::GroundRobot> robots;
  std::vector<bodies::Uav> uavs;
};

inline WorldSetup setup_world(const SimConfig& cfg) {
  WorldSetup w;
  w.arena = cfg.arena;
  if (cfg.fixed_obstacles) {
    w.obstacles = *cfg.fixed_obstacles;
  } else {
    RngStream placement(cfg.seed, "placement");
    w.obstacles = world::place_obstacles(placement, cfg.obstacle_count, w.arena);
  }

  RngStream poses(cfg.seed, "initial-poses");
  world::Rect region = world::default_start_region(w.arena);
  auto robot_poses = world::place_robots(poses, cfg.n_ground, region);
  w.robots.resize(cfg.n_ground);
  for (int i = 0; i < cfg.n_ground; ++i) {
    w.robots[i].id = i;
    w.robots[i].pose = robot_poses[i];
  }

  int n_uav = cfg.uav_count();
  w.uavs.resize(n_uav);
  controllers::SweepProgram program(w.arena, cfg.hold_s, cfg.leg_speed,
                                    cfg.corner_rate, cfg.tail_s);
  for (int i = 0; i < n_uav; ++i) {
    w.uavs[i].id = i;
    switch (cfg.approach) {
      case Approach::HybridMns: {
        w.uavs[i].pose.position = {poses.uniform(region.min.x, region.max.x),
                                   poses.uniform(region.min.y, region.max.y)};
        w.uavs[i].role = (i == 0) ? bodies::UavRole::Brain : bodies::UavRole::Inner;
        break;
      }
      case Approach::CentralizedFormation:
        w.uavs[i].pose = program.pose_at(0.0);
        w.uavs[i].role = bodies::UavRole::Supervisor;
        w.uavs[i].unlimited_fov = true;
        break;
      case Approach::Predetermined:
        w.uavs[i].pose.position = {w.arena.side_m / 2.0, w.arena.side_m / 2.0};
        w.uavs[i].role = bodies::UavRole::Supervisor;
        w.uavs[i].unlimited_fov = true;
        break;
      case Approach::Decentralized:
        break;
    }
  }
  return w;
}

inline RunResult run_single(const SimConfig& cfg) {
  if (cfg.n_ground < 1) throw ConfigInvalid("n_ground must be >= 1");
  if (cfg.obstacle_count < 0) throw ConfigInvalid("obstacle_count must be >= 0");

  WorldSetup w = setup_world(cfg);
  const world::Arena& arena = w.arena;
  const double dt = cfg.dt;
  bodies::ObstacleIndex obstacle_index(arena, w.obstacles);
  world::CoverageGrid grid(arena);
  RngStream controller_rng(cfg.seed, "controller");

  controllers::SweepProgram program(arena, cfg.hold_s, cfg.leg_speed,
                                    cfg.corner_rate, cfg.tail_s);
  const std::int64_t program_ticks = program.duration_ticks(dt);

  std::vector<int> robot_ids(cfg.n_ground);
  for (int i = 0; i < cfg.n_ground; ++i) robot_ids[i] = i;
  auto slots = controllers::formation_slots(robot_ids);
  auto anchors = controllers::uav_anchors(cfg.uav_count());
  std::vector<int> uav_ids(cfg.uav_count());
  std::vector<int> anchor_index(cfg.uav_count());
  for (int i = 0; i < cfg.uav_count(); ++i) {
    uav_ids[i] = i;
    anchor_index[i] = anchors[i].position_index;
  }

  controllers::LanePlan lane_plan;
  std::vector<controllers::PredeterminedState> pred_states(cfg.n_ground);
  if (cfg.approach == Approach::Predetermined) {
    lane_plan = controllers::decompose_lanes(cfg.n_ground, arena);
  }
  std::vector<controllers::DecentralizedState> dec_states(cfg.n_ground);
  std::vector<controllers::FollowerState> follower_states(cfg.n_ground);

  network::NetworkTopology topo;
  const bool star_mode = cfg.approach == Approach::CentralizedFormation ||
                         cfg.approach == Approach::Predetermined;
  if (star_mode) topo = network::star_topology(0, robot_ids);

  network::TrafficLedger ledger;
  bodies::ContactSet contacts;
  std::set<std::pair<int, int>> prev_edges;
  std::vector<network::ConnectivityRecord> connectivity;

  RunResult result;
  result.approach = approach_name(cfg.approach);
  result.seed = cfg.seed;
  result.n_ground = cfg.n_ground;
  result.n_uav = cfg.uav_count();
  result.obstacle_count = cfg.obstacle_count;
  result.dt = dt;

  // horizon / round bookkeeping
  std::int64_t horizon;
  if (cfg.horizon_ticks >= 0) {
    horizon = cfg.horizon_ticks;
  } else if (cfg.approach == Approach::Decentralized) {
    horizon = kDecentralizedHorizon;
  } else if (cfg.approach == Approach::Predetermined) {
    horizon = kPredeterminedSafetyCap;  // stops at round completion
  } else {
    horizon = program_ticks;
  }
  if (cfg.approach != Approach::Predetermined) result.round_tick = program_ticks;

  const bool formation_mode =
      cfg.approach == Approach::HybridMns || cfg.approach == Approach::CentralizedFormation;

  auto sample_uniformity = [&](std::int64_t tick) {
    metrics::UniformitySample s;
    s.tick = tick;
    s.p_ticks = metrics::uniformity(grid, 1.0);
    s.p_seconds = metrics::uniformity(grid, dt);
    result.series.uniformity_samples.push_back(s);
  };

  std::int64_t collisions_cum = 0;
  bool round_recorded = false;

  // per-robot sweep progress: a robot displaced by obstacle avoidance is
  // instructed along its slot's past trajectory so its share of the sweep is
  // retraced rather than skipped; progress catches back up to the reference
  // while the robot tracks cleanly
  std::vector<double> progress_s(cfg.n_ground, 0.0);
  constexpr double kCatchUpFactor = 1.45;
  constexpr double kProgressTol = 0.06;

  // shared-visibility lease: a transient loss of the shared robot (obstacle
  // avoidance lag) must not sever the tree; the link expires only when shared
  // visibility stays lost
  constexpr std::int64_t kLinkGraceTicks = 300;
  std::vector<std::vector<std::int64_t>> last_shared(
      cfg.uav_count(), std::vector<std::int64_t>(cfg.uav_count(), -kLinkGraceTicks - 1));

  for (std::int64_t t = 0; t < horizon; ++t) {
    // 1. scheduled failures
    auto applied = faults::inject_failures(cfg.failures, w.robots, t, controller_rng);
    for (auto& f : applied) result.failures_applied.push_back(f);

    // 2. sense
    std::vector<std::vector<bodies::SurfaceHit>> hits(cfg.n_ground);
    for (int i = 0; i < cfg.n_ground; ++i)
      if (!w.robots[i].failed)
        hits[i] = bodies::scan_surfaces(w.robots[i], arena, w.obstacles, obstacle_index,
                                        w.robots);

    const world::Pose ref = program.pose_at(static_cast<double>(t) * dt);

    auto instructed_target = [&](int r) {
      return controllers::slot_instruction(program.pose_at(progress_s[r]),
                                           slots[r].offset, arena);
    };
    for (int r = 0; r < cfg.n_ground; ++r) {
      if (w.robots[r].failed) continue;
      double d = distance(w.robots[r].pose.position, instructed_target(r));
      if (d < kProgressTol) {
        // tracking cleanly: fast-forward progress while the retraced target
        // stays within reach (instant during reference holds)
        for (int step = 0; step < 8 && progress_s[r] < static_cast<double>(t) * dt;
             ++step) {
          double next = std::min(static_cast<double>(t) * dt, progress_s[r] + dt);
          Vec2 tgt = controllers::slot_instruction(program.pose_at(next),
                                                   slots[r].offset, arena);
          if (distance(w.robots[r].pose.position, tgt) >= kProgressTol) break;
          progress_s[r] = next;
        }
        progress_s[r] = std::min(static_cast<double>(t) * dt,
                                 progress_s[r] + dt * (kCatchUpFactor - 1.0));
      } else if (d < 0.16) {
        // perturbed (e.g. ring point blocked by an obstacle): keep pace
        progress_s[r] = std::min(static_cast<double>(t) * dt, progress_s[r] + dt);
      }
    }

    // 3. network update
    std::vector<network::Message> messages;
    std::map<int, Vec2> instructions;  // robot id -> world target
    network::LinkState links;
    if (cfg.approach == Approach::HybridMns) {
      std::vector<std::vector<int>> visible(cfg.uav_count());
      for (int u = 0; u < cfg.uav_count(); ++u)
        visible[u] = bodies::uav_visible_robots(w.uavs[u], w.robots);
      links = network::mns_update_links(visible);
      for (int a = 0; a < cfg.uav_count(); ++a) {
        for (int b = a + 1; b < cfg.uav_count(); ++b) {
          if (links.uav_adjacent[a][b]) {
            last_shared[a][b] = t;
          } else if (t - last_shared[a][b] <= kLinkGraceTicks) {
            links.uav_adjacent[a][b] = links.uav_adjacent[b][a] = true;
          }
        }
      }
      topo = network::mns_merge(uav_ids, links, anchor_index);
      std::vector<std::vector<double>> preference(
          cfg.uav_count(), std::vector<double>(cfg.n_ground, 0.0));
      for (int u = 0; u < cfg.uav_count(); ++u)
        for (int r = 0; r < cfg.n_ground; ++r)
          preference[u][r] = std::abs(anchors[u].lateral - slots[r].offset.y);
      // degree-aware capacity keeps every node at or under the 10-message cap
      std::vector<int> uav_degree(cfg.uav_count(), 0);
      for (const auto& [child, parent] : topo.parent) {
        if (network::is_uav_node(child)) {
          ++uav_degree[child - network::kUavNodeBase];
          ++uav_degree[parent - network::kUavNodeBase];
        }
      }
      std::vector<int> capacity(cfg.uav_count());
      for (int u = 0; u < cfg.uav_count(); ++u)
        capacity[u] = std::max(0, network::kMaxGroundChildren - uav_degree[u]);
      network::attach_ground_leaves(topo, robot_ids, uav_ids, links, preference,
                                    &capacity);
    }

    // connectivity history (MNS)
    if (cfg.approach == Approach::HybridMns) {
      network::ConnectivityRecord rec;
      rec.tick = t;
      rec.uav_connected.resize(cfg.uav_count());
      for (int u = 0; u < cfg.uav_count(); ++u)
        rec.uav_connected[u] = topo.connected_to_brain(network::uav_node(u));
      connectivity.push_back(std::move(rec));
    }

    // 4. messages + instructions
    ledger.begin_tick(t);
    if (cfg.approach == Approach::HybridMns) {
      std::set<std::pair<int, int>> edges_now;
      for (const auto& [child, parent] : topo.parent)
        edges_now.insert({std::min(child, parent), std::max(child, parent)});
      for (const auto& [child, parent] : topo.parent) {
        bool fresh = !prev_edges.count({std::min(child, parent), std::max(child, parent)});
        if (fresh) {
          messages.push_back({t, parent, child, network::MessageKind::Handshake});
          messages.push_back({t, child, parent, network::MessageKind::Handshake});
          continue;
        }
        messages.push_back({t, parent, child, network::MessageKind::MotionInstruction});
        messages.push_back({t, child, parent, network::MessageKind::SensingReport});
        if (!network::is_uav_node(child) && topo.connected_to_brain(child)) {
          int parent_uav = parent - network::kUavNodeBase;
          if (std::binary_search(links.uav_sees[parent_uav].begin(),
                                 links.uav_sees[parent_uav].end(), child))
            instructions[child] = instructed_target(child);
        }
      }
      prev_edges = std::move(edges_now);
    } else if (cfg.approach == Approach::CentralizedFormation) {
      for (int r = 0; r < cfg.n_ground; ++r) {
        if (w.robots[r].failed) continue;
        messages.push_back({t, network::uav_node(0), r, network::MessageKind::MotionInstruction});
        messages.push_back({t, r, network::uav_node(0), network::MessageKind::SensingReport});
        instructions[r] = instructed_target(r);
      }
    } else if (cfg.approach == Approach::Predetermined) {
      for (int r = 0; r < cfg.n_ground; ++r) {
        if (w.robots[r].failed) continue;
        if (t == 0) {
          // full plan transfer
          messages.push_back({t, network::uav_node(0), r, network::MessageKind::MotionInstruction});
          if (cfg.predetermined_reports)
            messages.push_back({t, r, network::uav_node(0), network::MessageKind::SensingReport});
        } else if (cfg.predetermined_reports) {
          messages.push_back({t, network::uav_node(0), r, network::MessageKind::MotionInstruction});
          messages.push_back({t, r, network::uav_node(0), network::MessageKind::SensingReport});
        }
      }
    }
    network::route_and_count(messages, topo, ledger);
    ledger.finalize_tick();

    // 5. ground control
    std::vector<controllers::WheelCommand> commands(cfg.n_ground);
    for (int r = 0; r < cfg.n_ground; ++r) {
      if (w.robots[r].failed) continue;
      switch (cfg.approach) {
        case Approach::Decentralized:
          commands[r] = controllers::decentralized_step(w.robots[r], hits[r],
                                                        dec_states[r], controller_rng, dt);
          break;
        case Approach::HybridMns:
        case Approach::CentralizedFormation: {
          std::optional<Vec2> target;
          if (auto it = instructions.find(r); it != instructions.end()) target = it->second;
          commands[r] = controllers::formation_follower_step(w.robots[r], hits[r], target,
                                                             follower_states[r], dt);
          break;
        }
        case Approach::Predetermined:
          commands[r] = controllers::predetermined_follower_step(
              w.robots[r], hits[r], lane_plan.lanes[r], w.obstacles, pred_states[r], dt,
              cfg.detour_speed);
          break;
      }
    }

    // 6. move
    for (int r = 0; r < cfg.n_ground; ++r) {
      if (w.robots[r].failed) continue;
      w.robots[r] = bodies::step_differential_drive(w.robots[r], commands[r].left,
                                                    commands[r].right, dt, arena,
                                                    w.obstacles, obstacle_index);
    }
    for (int u = 0; u < cfg.uav_count(); ++u) {
      Vec2 target = w.uavs[u].pose.position;
      if (cfg.approach == Approach::HybridMns) {
        bool connected = topo.connected_to_brain(network::uav_node(u));
        if (connected || u == 0) {
          target = controllers::reference_to_world(ref, {0.0, anchors[u].lateral});
          // never advance so far that an attached ground robot leaves the fov
          double lo_x = -1e9, hi_x = 1e9, lo_y = -1e9, hi_y = 1e9;
          for (const auto& [child, parent] : topo.parent) {
            if (network::is_uav_node(child) || parent != network::uav_node(u)) continue;
            const Vec2& p = w.robots[static_cast<std::size_t>(child)].pose.position;
            lo_x = std::max(lo_x, p.x - (bodies::kUavFovX / 2.0 - 0.1));
            hi_x = std::min(hi_x, p.x + (bodies::kUavFovX / 2.0 - 0.1));
            lo_y = std::max(lo_y, p.y - (bodies::kUavFovY / 2.0 - 0.1));
            hi_y = std::min(hi_y, p.y + (bodies::kUavFovY / 2.0 - 0.1));
          }
          if (lo_x <= hi_x)
            target.x = std::clamp(target.x, lo_x, hi_x);
          else
            target.x = 0.5 * (lo_x + hi_x);
          if (lo_y <= hi_y)
            target.y = std::clamp(target.y, lo_y, hi_y);
          else
            target.y = 0.5 * (lo_y + hi_y);
        }
      } else if (cfg.approach == Approach::CentralizedFormation) {
        target = ref.position;
      }
      Vec2 d = target - w.uavs[u].pose.position;
      double dist = d.norm();
      double step = std::min(dist, w.uavs[u].max_speed * dt);
      if (dist > 1e-12) w.uavs[u].pose.position += d * (step / dist);
    }

    // 7. collisions
    auto events = bodies::detect_collisions(w.robots, contacts, t);
    if (!events.empty()) result.last_collision_tick = t;
    collisions_cum += static_cast<std::int64_t>(events.size());
    for (const auto& e : events) result.collision_events.push_back(e);

    // 8. coverage accumulation (non-failed robots only)
    double dist_cum = 0.0;
    for (int r = 0; r < cfg.n_ground; ++r) {
      dist_cum += w.robots[r].odometer;
      if (w.robots[r].failed) continue;
      if (auto cell = world::cell_of(w.robots[r].pose.position, arena))
        grid.record_visit(*cell, 1);
    }

    result.series.completeness_pct.push_back(metrics::completeness(grid));
    result.series.messages_total.push_back(ledger.cumulative_total());
    result.series.messages_max_per_robot.push_back(ledger.per_tick_max().back());
    result.series.collisions_total.push_back(collisions_cum);
    result.series.distance_total.push_back(dist_cum);

    // establishment: merged network and every live robot within 5 cm of its slot
    if (formation_mode && result.establishment_tick < 0) {
      bool established = true;
      if (cfg.approach == Approach::HybridMns) {
        for (int u = 0; u < cfg.uav_count() && established; ++u)
          if (!topo.connected_to_brain(network::uav_node(u))) established = false;
        for (int r = 0; r < cfg.n_ground && established; ++r)
          if (!w.robots[r].failed && !topo.parent.count(r)) established = false;
      }
      for (int r = 0; r < cfg.n_ground && established; ++r) {
        if (w.robots[r].failed) continue;
        Vec2 slot_world = controllers::slot_instruction(ref, slots[r].offset, arena);
        if (distance(w.robots[r].pose.position, slot_world) > 0.05) established = false;
      }
      if (established) result.establishment_tick = t;
    } else if (formation_mode) {
      for (int r = 0; r < cfg.n_ground; ++r) {
        if (w.robots[r].failed) continue;
        Vec2 slot_world = controllers::slot_instruction(ref, slots[r].offset, arena);
        result.max_slot_error_after_establishment =
            std::max(result.max_slot_error_after_establishment,
                     distance(w.robots[r].pose.position, slot_world));
      }
    }

    // topology-shape invariants
    if (cfg.approach == Approach::HybridMns && result.establishment_tick >= 0 &&
        result.failures_applied.empty()) {
      if (!network::is_caterpillar(topo)) ++result.caterpillar_violations;
    }
    if (star_mode && !network::is_star(topo)) ++result.star_violations;

    if ((t + 1) % 500 == 0) sample_uniformity(t + 1);

    // round end
    if (cfg.approach == Approach::Predetermined && result.round_tick < 0) {
      bool all_done = true;
      for (int r = 0; r < cfg.n_ground; ++r)
        if (!w.robots[r].failed && !pred_states[r].done) all_done = false;
      if (all_done) result.round_tick = t + 1;
    }
    if (!round_recorded && result.round_tick == t + 1) {
      result.completeness_at_round = metrics::completeness(grid);
      result.p_round_ticks = metrics::uniformity(grid, 1.0);
      result.p_round_seconds = metrics::uniformity(grid, dt);
      sample_uniformity(t + 1);
      round_recorded = true;
      if (cfg.approach == Approach::Predetermined && cfg.horizon_ticks < 0) {
        result.ticks_executed = t + 1;
        break;
      }
    }
    result.ticks_executed = t + 1;
  }

  if (!round_recorded) {
    // horizon cut a predetermined run short of completion
    result.completeness_at_round = metrics::completeness(grid);
    result.p_round_ticks = metrics::uniformity(grid, 1.0);
    result.p_round_seconds = metrics::uniformity(grid, dt);
  }

  result.completeness_final = metrics::completeness(grid);
  result.p_final_ticks = metrics::uniformity(grid, 1.0);
  result.p_final_seconds = metrics::uniformity(grid, dt);
  sample_uniformity(result.ticks_executed);
  result.messages_total = ledger.cumulative_total();
  result.max_messages_per_robot = ledger.max_per_robot();
  result.collisions_total = collisions_cum;
  result.disconnection = network::detect_permanent_disconnection(connectivity);
  result.visits_final = grid.visit_vector();
  result.odometers.resize(cfg.n_ground);
  for (int r = 0; r < cfg.n_ground; ++r) result.odometers[r] = w.robots[r].odometer;
  result.distance_total =
      result.series.distance_total.empty() ? 0.0 : result.series.distance_total.back();
  return result;
}

}  // namespace swarmcover::sim
