#include <catch2/catch_amalgamated.hpp>

#include "swarmcover/faults.hpp"

using namespace swarmcover;

namespace {
std::vector<bodies::GroundRobot> fleet(int n) {
  std::vector<bodies::GroundRobot> robots(n);
  for (int i = 0; i < n; ++i) robots[i].id = i;
  return robots;
}
}  // namespace

TEST_CASE("explicit failure schedule") {
  auto robots = fleet(9);
  faults::FailureSchedule schedule;
  schedule.events.push_back({400, {3}, 0});
  RngStream rng(1, "controller");

  CHECK(faults::inject_failures(schedule, robots, 399, rng).empty());
  CHECK_FALSE(robots[3].failed);

  auto applied = faults::inject_failures(schedule, robots, 400, rng);
  REQUIRE(applied.size() == 1);
  CHECK(applied[0].robot_id == 3);
  CHECK(robots[3].failed);

  // idempotent for an already-failed robot
  CHECK(faults::inject_failures(schedule, robots, 400, rng).empty());
}

TEST_CASE("empty schedule changes nothing") {
  auto robots = fleet(9);
  faults::FailureSchedule schedule;
  RngStream rng(1, "controller");
  CHECK(faults::inject_failures(schedule, robots, 400, rng).empty());
  for (const auto& r : robots) CHECK_FALSE(r.failed);
}

TEST_CASE("seeded draw picks k unique victims") {
  auto robots = fleet(9);
  faults::FailureSchedule schedule;
  schedule.events.push_back({400, {}, 5});
  RngStream rng(12, "controller");
  auto applied = faults::inject_failures(schedule, robots, 400, rng);
  REQUIRE(applied.size() == 5);
  std::set<int> ids;
  for (const auto& f : applied) ids.insert(f.robot_id);
  CHECK(ids.size() == 5);
  int failed = 0;
  for (const auto& r : robots) failed += r.failed;
  CHECK(failed == 5);
}

TEST_CASE("unknown robot id is rejected") {
  auto robots = fleet(3);
  faults::FailureSchedule schedule;
  schedule.events.push_back({10, {7}, 0});
  RngStream rng(1, "controller");
  CHECK_THROWS_AS(faults::inject_failures(schedule, robots, 10, rng), UnknownRobot);
}
