#include <catch2/catch_amalgamated.hpp>

#include "swarmcover/core.hpp"
#include "swarmcover/energy.hpp"

using namespace swarmcover;
using Catch::Matchers::WithinAbs;

TEST_CASE("max distance per charge") {
  energy::RobotSpec epuck;
  epuck.name = "e-puck2";
  epuck.max_speed = 0.154;
  epuck.operating_time_s = 3.0 * 3600.0;
  CHECK_THAT(energy::max_distance_per_charge(epuck), WithinAbs(1663.2, 1e-9));

  energy::RobotSpec spot;
  spot.name = "Spot";
  spot.max_speed = 1.6;
  spot.operating_time_s = 1.5 * 3600.0;
  CHECK_THAT(energy::max_distance_per_charge(spot), WithinAbs(8640.0, 1e-9));

  energy::RobotSpec still;
  still.max_speed = 0.0;
  still.operating_time_s = 100.0;
  CHECK(energy::max_distance_per_charge(still) == 0.0);

  energy::RobotSpec missing;
  missing.max_speed = 1.0;
  CHECK_THROWS_AS(energy::max_distance_per_charge(missing), MissingField);
}

TEST_CASE("consumption per meter") {
  CHECK_THAT(energy::consumption_per_meter(2.9, 0.068),
             WithinAbs(42.64705882352941, 1e-10));
  CHECK_THAT(energy::consumption_per_meter(32.0, 0.068),
             WithinAbs(470.5882352941176, 1e-9));
  CHECK(energy::consumption_per_meter(0.0, 0.068) == 0.0);
  CHECK_THROWS_AS(energy::consumption_per_meter(1.0, 0.0), ZeroSpeed);
}

TEST_CASE("budget runtime") {
  CHECK_THAT(energy::budget_runtime(200000.0, 3.0, 6.0, 9, 0),
             WithinAbs(200000.0 / 27.0, 1e-9));
  CHECK_THAT(energy::budget_runtime(200000.0, 3.0, 6.0, 9, 3),
             WithinAbs(200000.0 / 45.0, 1e-9));
  CHECK_THROWS_AS(energy::budget_runtime(1000.0, 0.0, 0.0, 9, 3), ZeroConsumption);
}

TEST_CASE("budget runtime is homogeneous in the budget") {
  RngStream rng(11, "budget");
  for (int i = 0; i < 200; ++i) {
    double budget = rng.uniform(1.0, 1e6);
    double g = rng.uniform(0.1, 80.0);
    double u = rng.uniform(0.1, 80.0);
    int ng = 1 + static_cast<int>(rng.below(12));
    int nu = static_cast<int>(rng.below(4));
    double t1 = energy::budget_runtime(budget, g, u, ng, nu);
    double t2 = energy::budget_runtime(2.0 * budget, g, u, ng, nu);
    REQUIRE_THAT(t2, WithinAbs(2.0 * t1, 1e-9 * std::abs(t1)));
  }
}

TEST_CASE("completeness_at interpolation") {
  energy::CompletenessCurve curve{"c", {1.0, 2.0, 3.0}, {10.0, 30.0, 40.0}};
  CHECK(energy::completeness_at(curve, 2.0) == 30.0);
  CHECK_THAT(energy::completeness_at(curve, 1.5), WithinAbs(20.0, 1e-12));
  CHECK(energy::completeness_at(curve, 9.0) == 40.0);
  CHECK_THROWS_AS(energy::completeness_at(curve, 0.5), BeforeCurveStart);
}

TEST_CASE("crossover of two lines lands on the analytic intersection") {
  // y1 = 10x, y2 = 2 + 6x cross at x = 0.5
  energy::CompletenessCurve a{"a", {0.0, 1.0}, {0.0, 10.0}};
  energy::CompletenessCurve b{"b", {0.0, 1.0}, {2.0, 8.0}};
  auto crossings = energy::crossover_thresholds({a, b});
  REQUIRE(crossings.size() == 1);
  CHECK_THAT(crossings[0].x, WithinAbs(0.5, 1e-6));
  CHECK(crossings[0].overtaking == "a");
  CHECK(crossings[0].overtaken == "b");
}

TEST_CASE("identical curves produce no crossovers") {
  energy::CompletenessCurve a{"a", {0.0, 1.0}, {0.0, 10.0}};
  energy::CompletenessCurve b = a;
  b.label = "b";
  CHECK(energy::crossover_thresholds({a, b}).empty());
}

TEST_CASE("reference curves reproduce the published leadership changes") {
  auto curves = energy::reference_curves();
  auto crossings = energy::crossover_thresholds(curves);
  auto has = [&](double x, const std::string& overtaking, const std::string& overtaken) {
    for (const auto& c : crossings)
      if (std::abs(c.x - x) < 1e-6 && c.overtaking == overtaking &&
          c.overtaken == overtaken)
        return true;
    return false;
  };
  CHECK(has(0.87, "centralized_formation", "decentralized"));
  CHECK(has(1.64, "predetermined", "centralized_formation"));
  CHECK(has(2.61, "hybrid_mns", "decentralized"));
}

TEST_CASE("area thresholds") {
  auto a = energy::area_thresholds(2000.0, {0.87, 1.64, 2.61});
  REQUIRE(a.size() == 3);
  CHECK_THAT(a[0], WithinAbs(2000.0 / 0.87, 1e-9));
  auto b = energy::area_thresholds_speed_limited(0.15, {2.61});
  CHECK_THAT(b[0], WithinAbs(0.15 * 1800.0 / 2.61, 1e-9));
  auto c = energy::area_thresholds(1000.0, {1.0});
  CHECK_THAT(c[0], WithinAbs(1000.0, 1e-12));
}

TEST_CASE("every populated appendix cell is reproduced within its printed rounding") {
  for (const auto& row : energy::builtin_specs()) {
    INFO(row.spec.name);
    double ref_speed = row.spec.kind == energy::RobotKind::Ground
                           ? energy::kGroundReferenceSpeed
                           : energy::kUavReferenceSpeed;
    double distance = 0.0;
    if (row.printed_distance_m) {
      distance = row.spec.kind == energy::RobotKind::Ground
                     ? energy::max_distance_per_charge(row.spec)
                     : energy::distance_at_speed(energy::kUavReferenceSpeed,
                                                 *row.spec.operating_time_s);
      CHECK(std::abs(distance - row.printed_distance_m->value) <=
            row.printed_distance_m->quantum);
    }
    if (row.printed_joule_per_m) {
      REQUIRE(row.spec.consumption_rate.has_value());
      double jm = energy::consumption_per_meter(*row.spec.consumption_rate, ref_speed);
      CHECK(std::abs(jm - row.printed_joule_per_m->value) <=
            row.printed_joule_per_m->quantum);
    }
    if (row.printed_cost_per_m) {
      REQUIRE(row.spec.monetary_cost.has_value());
      double cm = energy::cost_per_meter(row.spec, distance);
      CHECK(std::abs(cm - row.printed_cost_per_m->value) <=
            row.printed_cost_per_m->quantum);
    }
  }
}

TEST_CASE("rows with data gaps raise MissingField instead of imputing") {
  for (const auto& row : energy::builtin_specs()) {
    if (row.spec.name == "ECA Cameleon C" || row.spec.name == "ASI Chaos") {
      CHECK_FALSE(row.spec.consumption_rate.has_value());
      CHECK_THROWS_AS(energy::cost_per_meter(row.spec, 1000.0), MissingField);
    }
  }
}
