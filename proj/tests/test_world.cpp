#include <catch2/catch_amalgamated.hpp>

#include "swarmcover/core.hpp"
#include "swarmcover/world.hpp"

using namespace swarmcover;
using Catch::Matchers::WithinAbs;

TEST_CASE("arena defaults tile exactly") {
  world::Arena arena;
  CHECK(arena.cell_count() == 256);
  CHECK(arena.cell_m() * arena.grid_n == arena.side_m);
}

TEST_CASE("cell_of follows the gridline convention") {
  world::Arena arena;
  auto cell = world::cell_of({0.10, 0.10}, arena);
  REQUIRE(cell);
  CHECK((cell->col == 0 && cell->row == 0));

  cell = world::cell_of({3.99, 3.99}, arena);
  REQUIRE(cell);
  CHECK((cell->col == 15 && cell->row == 15));

  cell = world::cell_of({0.25, 0.25}, arena);
  REQUIRE(cell);
  CHECK((cell->col == 1 && cell->row == 1));

  // outer boundary belongs to the outermost cells
  cell = world::cell_of({4.0, 4.0}, arena);
  REQUIRE(cell);
  CHECK((cell->col == 15 && cell->row == 15));

  CHECK_FALSE(world::cell_of({-0.01, 1.0}, arena));
  CHECK_FALSE(world::cell_of({1.0, 4.01}, arena));
}

TEST_CASE("record_visit accumulates per cell") {
  world::Arena arena;
  world::CoverageGrid grid(arena);
  grid.record_visit({0, 0}, 1);
  CHECK(grid.visits({0, 0}) == 1);
  CHECK(grid.total_visits() == 1);
  CHECK(grid.visited_count() == 1);

  // two robots in the same cell for one tick
  grid.record_visit({3, 4}, 1);
  grid.record_visit({3, 4}, 1);
  CHECK(grid.visits({3, 4}) == 2);
  CHECK(grid.total_visits() == 3);
}

TEST_CASE("place_obstacles honors both buffers") {
  world::Arena arena;
  RngStream rng(1, "placement");
  CHECK(world::place_obstacles(rng, 0, arena).empty());

  RngStream rng2(1, "placement");
  auto obstacles = world::place_obstacles(rng2, 300, arena);
  REQUIRE(obstacles.size() == 300);
  for (const auto& o : obstacles) {
    for (const auto& c : o.corners()) {
      CHECK(c.x >= world::kObstacleBoundaryBuffer - 1e-12);
      CHECK(c.y >= world::kObstacleBoundaryBuffer - 1e-12);
      CHECK(c.x <= arena.side_m - world::kObstacleBoundaryBuffer + 1e-12);
      CHECK(c.y <= arena.side_m - world::kObstacleBoundaryBuffer + 1e-12);
    }
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i)
    for (std::size_t j = i + 1; j < obstacles.size(); ++j)
      REQUIRE(world::obstacle_clearance(obstacles[i], obstacles[j]) >=
              world::kObstacleClearance - 1e-12);
}

TEST_CASE("place_obstacles is bit-deterministic") {
  world::Arena arena;
  RngStream a(1, "placement"), b(1, "placement");
  auto oa = world::place_obstacles(a, 300, arena);
  auto ob = world::place_obstacles(b, 300, arena);
  REQUIRE(oa.size() == ob.size());
  for (std::size_t i = 0; i < oa.size(); ++i) {
    CHECK(oa[i].center.x == ob[i].center.x);
    CHECK(oa[i].center.y == ob[i].center.y);
    CHECK(oa[i].orientation == ob[i].orientation);
  }
}

TEST_CASE("paper densities are always feasible") {
  world::Arena arena;
  for (int density : {100, 200, 300}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      RngStream rng(seed, "placement");
      REQUIRE_NOTHROW(world::place_obstacles(rng, density, arena));
    }
  }
}

TEST_CASE("infeasible placement fails loudly") {
  world::Arena arena;
  RngStream rng(1, "placement");
  CHECK_THROWS_AS(world::place_obstacles(rng, 2000, arena, 20000), PlacementInfeasible);
}

TEST_CASE("place_robots is collision-free, inside the region, deterministic") {
  world::Arena arena;
  world::Rect region = world::default_start_region(arena);
  CHECK_THAT(region.max.x - region.min.x, WithinAbs(1.25, 1e-12));
  CHECK_THAT(region.max.y - region.min.y, WithinAbs(1.0, 1e-12));

  RngStream rng(3, "initial-poses");
  auto poses = world::place_robots(rng, 9, region);
  REQUIRE(poses.size() == 9);
  for (const auto& p : poses) {
    CHECK(region.contains(p.position));
    CHECK(p.theta >= 0.0);
    CHECK(p.theta < 2.0 * kPi);
  }
  for (std::size_t i = 0; i < poses.size(); ++i)
    for (std::size_t j = i + 1; j < poses.size(); ++j)
      CHECK(distance(poses[i].position, poses[j].position) >= 0.05);

  RngStream rng2(3, "initial-poses");
  auto again = world::place_robots(rng2, 9, region);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    CHECK(poses[i].position.x == again[i].position.x);
    CHECK(poses[i].theta == again[i].theta);
  }

  RngStream rng3(4, "initial-poses");
  auto single = world::place_robots(rng3, 1, region);
  REQUIRE(single.size() == 1);
  CHECK(region.contains(single[0].position));
}

TEST_CASE("obstacle geometry helpers") {
  world::Obstacle o;
  o.center = {1.0, 1.0};
  o.orientation = 0.0;
  CHECK_THAT(o.signed_distance({1.0, 1.0}), WithinAbs(-0.02, 1e-12));
  CHECK_THAT(o.signed_distance({1.05, 1.0}), WithinAbs(0.03, 1e-12));
  Vec2 cp = o.closest_point({1.05, 1.0});
  CHECK_THAT(cp.x, WithinAbs(1.02, 1e-12));
  CHECK_THAT(cp.y, WithinAbs(1.0, 1e-12));

  world::Obstacle rotated;
  rotated.center = {0.0, 0.0};
  rotated.orientation = kPi / 4.0;
  // corner now points along +x at distance half_side * sqrt(2)
  CHECK_THAT(rotated.signed_distance({0.02 * std::sqrt(2.0), 0.0}), WithinAbs(0.0, 1e-12));
}
