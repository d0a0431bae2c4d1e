#include <catch2/catch_amalgamated.hpp>

#include "swarmcover/harness.hpp"

using namespace swarmcover;
using Catch::Matchers::WithinAbs;

TEST_CASE("experiment config parsing") {
  auto j = io::json::parse(R"({
    "approach": "hybrid_mns",
    "obstacles": 200,
    "n_ground": 9,
    "seeds": {"from": 3, "to": 7},
    "failures": [{"tick": 400, "count": 3}],
    "jobs": 2,
    "out_dir": "x"
  })");
  auto exp = harness::parse_experiment(j);
  CHECK(exp.base.approach == sim::Approach::HybridMns);
  CHECK(exp.base.obstacle_count == 200);
  CHECK(exp.seeds == std::vector<std::uint64_t>{3, 4, 5, 6, 7});
  REQUIRE(exp.base.failures.events.size() == 1);
  CHECK(exp.base.failures.events[0].count == 3);
  CHECK(exp.jobs == 2);

  CHECK_THROWS_AS(harness::parse_experiment(io::json::parse(R"({"seeds": [1]})")),
                  ConfigInvalid);
  CHECK_THROWS_AS(harness::parse_experiment(io::json::parse(R"({"approach": "bogus"})")),
                  ConfigInvalid);
}

TEST_CASE("curves csv round-trip") {
  auto curves = energy::reference_curves();
  auto text = harness::curves_csv(curves);
  auto parsed = harness::curves_from_csv(text);
  REQUIRE(parsed.size() == curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    CHECK(parsed[i].label == curves[i].label);
    REQUIRE(parsed[i].x.size() == curves[i].x.size());
    for (std::size_t k = 0; k < curves[i].x.size(); ++k) {
      CHECK_THAT(parsed[i].x[k], WithinAbs(curves[i].x[k], 1e-9));
      CHECK_THAT(parsed[i].pct[k], WithinAbs(curves[i].pct[k], 1e-9));
    }
  }
}

TEST_CASE("distance curve is monotone and anchored at zero") {
  sim::SimConfig cfg;
  cfg.approach = sim::Approach::Decentralized;
  cfg.obstacle_count = 0;
  cfg.horizon_ticks = 1200;
  auto results = harness::run_batch(cfg, {1, 2}, 2);
  auto curve = harness::distance_curve("decentralized", results, 16.0, 1.0, 0.01);
  REQUIRE_FALSE(curve.x.empty());
  CHECK(curve.pct.front() <= 1.0);
  for (std::size_t i = 1; i < curve.pct.size(); ++i)
    REQUIRE(curve.pct[i] >= curve.pct[i - 1]);
}

TEST_CASE("energy analysis emits the table rows") {
  auto analysis =
      harness::analyze_energy(energy::reference_curves(), energy::published_crossovers());
  // 4 distance rows + 4 speed rows + header
  int lines = 0;
  for (char c : analysis.thresholds_csv)
    if (c == '\n') ++lines;
  CHECK(lines == 9);
  CHECK(analysis.budget_csv.find("predetermined") != std::string::npos);
}

TEST_CASE("specs serialize with provenance notes") {
  auto j = harness::specs_to_json(energy::builtin_specs());
  REQUIRE(j.is_array());
  CHECK(j.size() == 16);  // 11 ground platforms + 5 drones
  bool found_note = false;
  for (const auto& row : j)
    if (row.contains("notes")) found_note = true;
  CHECK(found_note);
}
