#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "swarmcover/core.hpp"
#include "swarmcover/metrics.hpp"
#include "swarmcover/world.hpp"

using namespace swarmcover;

namespace {

// independent reference for Eq.-style uniformity: sort-based median, direct
// accumulation
double uniformity_reference(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  double median;
  std::size_t c = sorted.size();
  if (c % 2 == 1)
    median = sorted[c / 2];
  else
    median = (sorted[c / 2 - 1] + sorted[c / 2]) / 2.0;
  double total = 0.0;
  for (double x : v) total += std::sqrt(std::abs(x - median));
  return total / static_cast<double>(c);
}

}  // namespace

TEST_CASE("uniformity worked examples") {
  CHECK(metrics::uniformity(std::vector<double>{7, 7, 7, 7}) == 0.0);
  CHECK_THAT(metrics::uniformity(std::vector<double>{4, 1, 1, 1}),
             Catch::Matchers::WithinAbs(std::sqrt(3.0) / 4.0, 1e-15));
  CHECK_THAT(metrics::uniformity(std::vector<double>{0, 0, 1, 1}),
             Catch::Matchers::WithinAbs(std::sqrt(0.5), 1e-15));
}

TEST_CASE("uniformity matches brute-force reference on random vectors") {
  RngStream rng(2024, "uniformity-test");
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t n = 1 + rng.below(256);
    std::vector<double> v(n);
    for (auto& x : v) x = std::floor(rng.uniform(0.0, 500.0));
    double got = metrics::uniformity(v);
    double want = uniformity_reference(v);
    double tol = 1e-12 * std::max(1.0, std::abs(want));
    REQUIRE(std::abs(got - want) <= tol);
  }
}

TEST_CASE("uniformity is permutation invariant and translation invariant") {
  RngStream rng(7, "uniformity-perm");
  std::vector<double> v(64);
  for (auto& x : v) x = std::floor(rng.uniform(0.0, 100.0));
  double base = metrics::uniformity(v);
  std::vector<double> shuffled = v;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  CHECK_THAT(metrics::uniformity(shuffled), Catch::Matchers::WithinAbs(base, 1e-12));

  std::vector<double> shifted = v;
  for (auto& x : shifted) x += 17.0;
  CHECK_THAT(metrics::uniformity(shifted), Catch::Matchers::WithinAbs(base, 1e-12));
}

TEST_CASE("completeness counts visited cells") {
  world::Arena arena;
  world::CoverageGrid grid(arena);
  CHECK(metrics::completeness(grid) == 0.0);
  grid.record_visit({0, 0}, 1);
  CHECK_THAT(metrics::completeness(grid), Catch::Matchers::WithinAbs(100.0 / 256.0, 1e-12));
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) grid.record_visit({c, r}, 2);
  CHECK(metrics::completeness(grid) == 100.0);
}

TEST_CASE("completeness 208 of 256 matches the table scale") {
  world::Arena arena;
  world::CoverageGrid grid(arena);
  int marked = 0;
  for (int r = 0; r < 16 && marked < 208; ++r)
    for (int c = 0; c < 16 && marked < 208; ++c) {
      grid.record_visit({c, r}, 1);
      ++marked;
    }
  CHECK_THAT(metrics::completeness(grid), Catch::Matchers::WithinAbs(81.25, 1e-12));
}

TEST_CASE("completeness is monotone under record_visit") {
  world::Arena arena;
  world::CoverageGrid grid(arena);
  RngStream rng(5, "monotone");
  double prev = 0.0;
  for (int i = 0; i < 2000; ++i) {
    world::CellIndex cell{static_cast<int>(rng.below(16)), static_cast<int>(rng.below(16))};
    grid.record_visit(cell, static_cast<std::int64_t>(rng.below(3)));
    double now = metrics::completeness(grid);
    REQUIRE(now >= prev);
    prev = now;
  }
}

TEST_CASE("distance per square meter") {
  world::Arena arena;
  std::vector<double> odo(9, 1.5466666666666666);
  CHECK_THAT(metrics::distance_per_sqm(odo, arena),
             Catch::Matchers::WithinAbs(0.87, 1e-9));
  CHECK(metrics::distance_per_sqm({}, arena) == 0.0);
  CHECK_THAT(metrics::distance_per_sqm({16.0}, arena),
             Catch::Matchers::WithinAbs(1.0, 1e-15));
}
