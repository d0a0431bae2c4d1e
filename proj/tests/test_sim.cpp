#include <catch2/catch_amalgamated.hpp>

#include "swarmcover/harness.hpp"
#include "swarmcover/io.hpp"
#include "swarmcover/sim.hpp"

using namespace swarmcover;
using Catch::Matchers::WithinAbs;

TEST_CASE("identical configs produce bit-identical runs") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::HybridMns;
  cfg.obstacle_count = 50;
  cfg.seed = 11;
  cfg.horizon_ticks = 700;
  auto a = sim::run_single(cfg);
  auto b = sim::run_single(cfg);
  CHECK(io::run_series_csv(a) == io::run_series_csv(b));
  CHECK(io::run_summary_json(a).dump() == io::run_summary_json(b).dump());

  cfg.approach = sim::Approach::Decentralized;
  cfg.horizon_ticks = 600;
  auto c = sim::run_single(cfg);
  auto d = sim::run_single(cfg);
  CHECK(io::run_series_csv(c) == io::run_series_csv(d));
}

TEST_CASE("occupancy conservation with a failure") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Decentralized;
  cfg.obstacle_count = 30;
  cfg.seed = 5;
  cfg.horizon_ticks = 300;
  cfg.failures.events.push_back({100, {2}, 0});
  auto result = sim::run_single(cfg);

  std::int64_t total = 0;
  for (auto v : result.visits_final) total += v;
  // 9 robots for 100 ticks, then 8 for 200
  CHECK(total == 9 * 100 + 8 * 200);
}

TEST_CASE("completeness series is monotone") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Decentralized;
  cfg.obstacle_count = 100;
  cfg.seed = 3;
  cfg.horizon_ticks = 1500;
  auto result = sim::run_single(cfg);
  for (std::size_t t = 1; t < result.series.completeness_pct.size(); ++t)
    REQUIRE(result.series.completeness_pct[t] >= result.series.completeness_pct[t - 1]);
}

TEST_CASE("decentralized runs exchange no messages") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Decentralized;
  cfg.obstacle_count = 0;
  cfg.seed = 2;
  cfg.horizon_ticks = 400;
  auto result = sim::run_single(cfg);
  CHECK(result.messages_total == 0);
  CHECK(result.max_messages_per_robot == 0);
}

TEST_CASE("centralized star carries 18 messages per tick") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::CentralizedFormation;
  cfg.obstacle_count = 0;
  cfg.seed = 2;
  cfg.horizon_ticks = 500;
  auto result = sim::run_single(cfg);
  CHECK(result.messages_total == 18 * 500);
  CHECK(result.max_messages_per_robot == 18);
  CHECK(result.star_violations == 0);
}

TEST_CASE("hybrid establishment, caterpillar and slot tracking without obstacles") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::HybridMns;
  cfg.obstacle_count = 0;
  cfg.seed = 9;
  auto result = sim::run_single(cfg);

  REQUIRE(result.establishment_tick > 0);
  CHECK(result.establishment_tick < 600);  // within the hold window
  CHECK(result.caterpillar_violations == 0);
  CHECK(result.max_slot_error_after_establishment < 0.05);
  CHECK(result.last_collision_tick <= result.establishment_tick);
  CHECK(result.max_messages_per_robot <= network::kPerRobotMessageCap);
  CHECK_FALSE(result.disconnection.permanent);
}

TEST_CASE("hybrid and centralized share the same round tick") {
  for (std::uint64_t seed : {1ull, 2ull}) {
    sim::SimConfig cfg;
    cfg.obstacle_count = 100;
    cfg.seed = seed;
    cfg.approach = sim::Approach::HybridMns;
    auto hybrid = sim::run_single(cfg);
    cfg.approach = sim::Approach::CentralizedFormation;
    auto centralized = sim::run_single(cfg);
    REQUIRE(hybrid.round_tick == centralized.round_tick);
    CHECK(hybrid.ticks_executed == hybrid.round_tick);
  }
}

TEST_CASE("predetermined run completes its plans and stops") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Predetermined;
  cfg.obstacle_count = 100;
  cfg.seed = 4;
  auto result = sim::run_single(cfg);
  REQUIRE(result.round_tick > 0);
  CHECK(result.ticks_executed == result.round_tick);
  CHECK(result.round_tick < sim::kPredeterminedSafetyCap);
  CHECK(result.completeness_at_round > 95.0);
}

TEST_CASE("batch is order-independent and sorted by seed") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Decentralized;
  cfg.obstacle_count = 20;
  cfg.horizon_ticks = 400;
  std::vector<std::uint64_t> seeds{4, 1, 3, 2};
  auto serial = harness::run_batch(cfg, seeds, 1);
  auto parallel = harness::run_batch(cfg, seeds, 2);
  CHECK(harness::batch_csv(serial) == harness::batch_csv(parallel));
  for (std::size_t i = 1; i < serial.size(); ++i)
    CHECK(serial[i - 1].seed < serial[i].seed);
}

TEST_CASE("config validation") {
  sim::SimConfig cfg;
  cfg.n_ground = 0;
  CHECK_THROWS_AS(sim::run_single(cfg), ConfigInvalid);
}

TEST_CASE("arena replay reproduces the layout") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Decentralized;
  cfg.obstacle_count = 40;
  cfg.seed = 8;
  auto setup = sim::setup_world(cfg);
  auto j = io::arena_to_json(setup.arena, setup.obstacles);
  auto [arena, obstacles] = io::arena_from_json(j);
  REQUIRE(obstacles.size() == setup.obstacles.size());
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    CHECK(obstacles[i].center.x == setup.obstacles[i].center.x);
    CHECK(obstacles[i].orientation == setup.obstacles[i].orientation);
  }

  cfg.fixed_obstacles = obstacles;
  cfg.horizon_ticks = 200;
  auto replayed = sim::run_single(cfg);
  cfg.fixed_obstacles.reset();
  auto original = sim::run_single(cfg);
  CHECK(io::run_series_csv(replayed) == io::run_series_csv(original));
}
