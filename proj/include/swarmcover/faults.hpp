#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "swarmcover/bodies.hpp"
#include "swarmcover/core.hpp"

namespace swarmcover::faults {

// Either an explicit victim list or a seeded uniform draw of `count` victims
// at the scheduled tick.
struct FailureEvent {
  std::int64_t tick = 0;
  std::vector<int> robot_ids;  // explicit victims; empty -> draw `count`
  int count = 0;
};

struct FailureSchedule {
  std::vector<FailureEvent> events;
};

struct FailureRecord {
  std::int64_t tick = 0;
  int robot_id = 0;
};

// Applies every event scheduled for `tick`. Failed robots stop moving,
// sensing, counting visits, and messaging; their bodies remain in the arena.
inline std::vector<FailureRecord> inject_failures(const FailureSchedule& schedule,
                                                  std::vector<bodies::GroundRobot>& robots,
                                                  std::int64_t tick, RngStream& rng) {
  std::vector<FailureRecord> applied;
  for (const auto& event : schedule.events) {
    if (event.tick != tick) continue;
    std::vector<int> victims = event.robot_ids;
    if (victims.empty() && event.count > 0) {
      std::vector<int> alive;
      for (const auto& r : robots)
        if (!r.failed) alive.push_back(r.id);
      int k = std::min<int>(event.count, static_cast<int>(alive.size()));
      for (int i = 0; i < k; ++i) {
        std::size_t pick = static_cast<std::size_t>(rng.below(alive.size()));
        victims.push_back(alive[pick]);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    for (int id : victims) {
      auto it = std::find_if(robots.begin(), robots.end(),
                             [id](const bodies::GroundRobot& r) { return r.id == id; });
      if (it == robots.end()) throw UnknownRobot("no ground robot with id " + std::to_string(id));
      if (!it->failed) {
        it->failed = true;
        applied.push_back({tick, id});
      }
    }
  }
  return applied;
}

}  // namespace swarmcover::faults
