#include <catch2/catch_amalgamated.hpp>

#include "swarmcover/network.hpp"

using namespace swarmcover;
namespace net = swarmcover::network;

TEST_CASE("links require a shared visible ground robot") {
  auto ls = net::mns_update_links({{3, 4}, {3}, {7}});
  CHECK(ls.uav_adjacent[0][1]);
  CHECK_FALSE(ls.uav_adjacent[0][2]);
  CHECK_FALSE(ls.uav_adjacent[1][2]);

  auto isolated = net::mns_update_links({{1}, {}});
  CHECK_FALSE(isolated.uav_adjacent[0][1]);
}

TEST_CASE("two adjacent trees merge under the smaller brain id") {
  // exhaustive over the 2-tree id pairs
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      if (a == b) continue;
      std::vector<int> ids = {std::min(a, b), std::max(a, b)};
      auto ls = net::mns_update_links({{1}, {1}});
      auto topo = net::mns_merge(ids, ls, {0, 1});
      REQUIRE(topo.brain);
      CHECK(*topo.brain == net::uav_node(std::min(a, b)));
      CHECK(topo.parent.at(net::uav_node(std::max(a, b))) ==
            net::uav_node(std::min(a, b)));
    }
  }
}

TEST_CASE("merge is idempotent for unchanged adjacency") {
  auto ls = net::mns_update_links({{1, 2}, {1}, {2}});
  auto t1 = net::mns_merge({0, 1, 2}, ls, {1, 0, 2});
  auto t2 = net::mns_merge({0, 1, 2}, ls, {1, 0, 2});
  CHECK(t1.parent == t2.parent);
  CHECK(t1.brain == t2.brain);
}

TEST_CASE("fully merged default system is a caterpillar with ground leaves") {
  // 3 UAVs all mutually adjacent; chain preference by anchor index
  net::LinkState ls;
  ls.uav_sees = {{0, 1, 2, 3, 4, 5, 6, 7, 8},
                 {0, 1, 2, 3, 4, 5, 6},
                 {2, 3, 4, 5, 6, 7, 8}};
  for (auto& v : ls.uav_sees) std::sort(v.begin(), v.end());
  ls.uav_adjacent = {{false, true, true}, {true, false, true}, {true, true, false}};
  auto topo = net::mns_merge({0, 1, 2}, ls, {1, 0, 2});
  REQUIRE(topo.brain);
  CHECK(*topo.brain == net::uav_node(0));

  std::vector<std::vector<double>> pref(3, std::vector<double>(9, 0.0));
  std::vector<int> robots{0, 1, 2, 3, 4, 5, 6, 7, 8};
  for (int r = 0; r < 9; ++r) {
    pref[0][r] = std::abs(r - 4.0);
    pref[1][r] = std::abs(r - 1.0);
    pref[2][r] = std::abs(r - 7.0);
  }
  auto assignment = net::attach_ground_leaves(topo, robots, {0, 1, 2}, ls, pref);
  CHECK(assignment.size() == 9);
  CHECK(net::is_caterpillar(topo));

  // one brain, two inner UAVs, nine leaves
  int leaves = 0;
  for (int r : robots)
    if (topo.parent.count(r)) ++leaves;
  CHECK(leaves == 9);
}

TEST_CASE("leaf attachment respects the 5-child capacity") {
  net::LinkState ls;
  ls.uav_sees = {{0, 1, 2, 3, 4, 5, 6, 7, 8}, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  ls.uav_adjacent = {{false, true}, {true, false}};
  auto topo = net::mns_merge({0, 1}, ls, {0, 1});
  std::vector<std::vector<double>> pref(2, std::vector<double>(9, 0.0));  // all tied
  auto assignment =
      net::attach_ground_leaves(topo, {0, 1, 2, 3, 4, 5, 6, 7, 8}, {0, 1}, ls, pref);
  int to_first = 0;
  for (const auto& [robot, uav] : assignment)
    if (uav == 0) ++to_first;
  CHECK(to_first == net::kMaxGroundChildren);
  CHECK(assignment.size() == 9);
}

TEST_CASE("route_and_count ledger accounting") {
  // synthetic MNS UAV with 5 ground children: 2 messages each = 10 at the cap
  net::NetworkTopology topo;
  topo.brain = net::uav_node(0);
  topo.nodes.insert(net::uav_node(0));
  for (int r = 0; r < 5; ++r) {
    topo.nodes.insert(r);
    topo.parent[r] = net::uav_node(0);
  }
  net::TrafficLedger ledger;
  ledger.begin_tick(0);
  std::vector<net::Message> messages;
  for (int r = 0; r < 5; ++r) {
    messages.push_back({0, net::uav_node(0), r, net::MessageKind::MotionInstruction});
    messages.push_back({0, r, net::uav_node(0), net::MessageKind::SensingReport});
  }
  net::route_and_count(messages, topo, ledger);
  ledger.finalize_tick();
  CHECK(ledger.cumulative_total() == 10);
  CHECK(ledger.max_per_robot() == 10);
  CHECK(ledger.max_per_robot() <= net::kPerRobotMessageCap);
}

TEST_CASE("star hub with nine robots carries 18 messages per tick") {
  std::vector<int> robots{0, 1, 2, 3, 4, 5, 6, 7, 8};
  auto topo = net::star_topology(0, robots);
  CHECK(net::is_star(topo));
  net::TrafficLedger ledger;
  ledger.begin_tick(0);
  std::vector<net::Message> messages;
  for (int r : robots) {
    messages.push_back({0, net::uav_node(0), r, net::MessageKind::MotionInstruction});
    messages.push_back({0, r, net::uav_node(0), net::MessageKind::SensingReport});
  }
  net::route_and_count(messages, topo, ledger);
  ledger.finalize_tick();
  CHECK(ledger.cumulative_total() == 18);
  CHECK(ledger.max_per_robot() == 18);  // 2 per ground robot
}

TEST_CASE("illegal routes are rejected") {
  auto topo = net::star_topology(0, {0, 1});
  net::TrafficLedger ledger;
  ledger.begin_tick(0);
  std::vector<net::Message> bad{{0, 0, 1, net::MessageKind::MotionInstruction}};
  CHECK_THROWS_AS(net::route_and_count(bad, topo, ledger), IllegalRoute);
}

TEST_CASE("permanent disconnection detection") {
  auto record = [](std::int64_t tick, bool a, bool b) {
    net::ConnectivityRecord r;
    r.tick = tick;
    r.uav_connected = {a, b};
    return r;
  };

  // no link ever drops
  std::vector<net::ConnectivityRecord> h1{record(0, true, true), record(1, true, true)};
  CHECK_FALSE(net::detect_permanent_disconnection(h1).permanent);

  // drops then restored
  std::vector<net::ConnectivityRecord> h2{record(0, true, true), record(1, true, false),
                                          record(2, true, true)};
  CHECK_FALSE(net::detect_permanent_disconnection(h2).permanent);

  // drops and never restored
  std::vector<net::ConnectivityRecord> h3{record(0, true, true), record(5, true, false),
                                          record(6, true, false)};
  auto rep = net::detect_permanent_disconnection(h3);
  CHECK(rep.permanent);
  CHECK(rep.first_tick == 5);
}
