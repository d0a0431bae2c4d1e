#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "swarmcover/core.hpp"

namespace swarmcover::network {

// Node id space: ground robots keep their ids, UAV node id = kUavNodeBase + uav id.
constexpr int kUavNodeBase = 1000;
inline int uav_node(int uav_id) { return kUavNodeBase + uav_id; }
inline bool is_uav_node(int node) { return node >= kUavNodeBase; }

constexpr int kMaxGroundChildren = 5;
constexpr int kPerRobotMessageCap = 10;

enum class MessageKind { MotionInstruction, SensingReport, Handshake };

struct Message {
  std::int64_t tick = 0;
  int sender = 0;
  int receiver = 0;
  MessageKind kind = MessageKind::MotionInstruction;
};

struct NetworkTopology {
  std::set<int> nodes;
  std::map<int, int> parent;  // child -> parent
  std::optional<int> brain;

  bool has_edge(int a, int b) const {
    auto it = parent.find(a);
    if (it != parent.end() && it->second == b) return true;
    it = parent.find(b);
    return it != parent.end() && it->second == a;
  }
  std::vector<int> children_of(int node) const {
    std::vector<int> out;
    for (const auto& [c, p] : parent)
      if (p == node) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
  }
  bool connected_to_brain(int node) const {
    if (!brain) return false;
    int cur = node;
    for (int hops = 0; hops < 1024; ++hops) {
      if (cur == *brain) return true;
      auto it = parent.find(cur);
      if (it == parent.end()) return false;
      cur = it->second;
    }
    return false;
  }
};

// UAV-UAV adjacency and UAV->ground visibility for one tick.
struct LinkState {
  std::vector<std::vector<int>> uav_sees;          // uav idx -> sorted robot ids
  std::vector<std::vector<bool>> uav_adjacent;     // shared-visible-robot predicate
};

// Two UAVs can link when they can see the same (non-failed) ground robot.
inline LinkState mns_update_links(const std::vector<std::vector<int>>& visible_per_uav) {
  LinkState ls;
  ls.uav_sees = visible_per_uav;
  for (auto& v : ls.uav_sees) std::sort(v.begin(), v.end());
  std::size_t u = ls.uav_sees.size();
  ls.uav_adjacent.assign(u, std::vector<bool>(u, false));
  for (std::size_t i = 0; i < u; ++i) {
    for (std::size_t j = i + 1; j < u; ++j) {
      bool shared = false;
      const auto& a = ls.uav_sees[i];
      const auto& b = ls.uav_sees[j];
      std::size_t x = 0, y = 0;
      while (x < a.size() && y < b.size()) {
        if (a[x] == b[y]) { shared = true; break; }
        (a[x] < b[y]) ? ++x : ++y;
      }
      ls.uav_adjacent[i][j] = ls.uav_adjacent[j][i] = shared;
    }
  }
  return ls;
}

// Deterministic forest over the UAVs given the live adjacency. Trees merge as
// soon as a link joins them; the brain of a merged tree is the smallest id.
// Neighbor exploration prefers nearby anchor indices so that, when the
// adjacency graph contains the anchor chain, the tree IS the chain
// (caterpillar with ground leaves).
inline NetworkTopology mns_merge(const std::vector<int>& uav_ids,
                                 const LinkState& links,
                                 const std::vector<int>& anchor_index) {
  NetworkTopology topo;
  std::size_t u = uav_ids.size();
  std::vector<bool> placed(u, false);
  for (std::size_t root = 0; root < u; ++root) {
    if (placed[root]) continue;
    // roots are scanned in id order, so each component's root (= brain) is
    // its smallest id
    topo.nodes.insert(uav_node(uav_ids[root]));
    if (!topo.brain) topo.brain = uav_node(uav_ids[root]);
    placed[root] = true;
    std::vector<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.erase(queue.begin());
      std::vector<std::size_t> nbrs;
      for (std::size_t j = 0; j < u; ++j)
        if (!placed[j] && links.uav_adjacent[cur][j]) nbrs.push_back(j);
      std::stable_sort(nbrs.begin(), nbrs.end(), [&](std::size_t a, std::size_t b) {
        int da = std::abs(anchor_index[a] - anchor_index[cur]);
        int db = std::abs(anchor_index[b] - anchor_index[cur]);
        if (da != db) return da < db;
        return uav_ids[a] < uav_ids[b];
      });
      for (std::size_t j : nbrs) {
        placed[j] = true;
        topo.nodes.insert(uav_node(uav_ids[j]));
        topo.parent[uav_node(uav_ids[j])] = uav_node(uav_ids[cur]);
        queue.push_back(j);
      }
    }
  }
  return topo;
}

// Leaf attachment: robots are handled in id order and attach to the seeing
// UAV with the smallest preference key (ties to the smaller UAV id), subject
// to a per-UAV capacity that bounds traffic at the 10-message cap. When no
// capacity vector is given every UAV takes up to 5 ground children.
inline std::map<int, int> attach_ground_leaves(
    NetworkTopology& topo, const std::vector<int>& robot_ids,
    const std::vector<int>& uav_ids, const LinkState& links,
    const std::vector<std::vector<double>>& preference,
    const std::vector<int>* capacity = nullptr) {
  std::map<int, int> assignment;  // robot -> uav id
  std::vector<int> load(uav_ids.size(), 0);
  for (std::size_t ri = 0; ri < robot_ids.size(); ++ri) {
    int best = -1;
    double best_key = 0.0;
    for (std::size_t ui = 0; ui < uav_ids.size(); ++ui) {
      int cap = capacity ? (*capacity)[ui] : kMaxGroundChildren;
      if (load[ui] >= cap) continue;
      if (!std::binary_search(links.uav_sees[ui].begin(), links.uav_sees[ui].end(),
                              robot_ids[ri]))
        continue;
      double key = preference[ui][ri];
      if (best < 0 || key < best_key ||
          (key == best_key && uav_ids[ui] < uav_ids[static_cast<std::size_t>(best)])) {
        best = static_cast<int>(ui);
        best_key = key;
      }
    }
    if (best >= 0) {
      ++load[best];
      assignment[robot_ids[ri]] = uav_ids[best];
      topo.nodes.insert(robot_ids[ri]);
      topo.parent[robot_ids[ri]] = uav_node(uav_ids[best]);
    }
  }
  return assignment;
}

inline NetworkTopology star_topology(int hub_uav_id, const std::vector<int>& robot_ids) {
  NetworkTopology topo;
  topo.brain = uav_node(hub_uav_id);
  topo.nodes.insert(uav_node(hub_uav_id));
  for (int r : robot_ids) {
    topo.nodes.insert(r);
    topo.parent[r] = uav_node(hub_uav_id);
  }
  return topo;
}

class TrafficLedger {
 public:
  void begin_tick(std::int64_t tick) {
    current_tick_ = tick;
    tick_total_ = 0;
    tick_counts_.clear();
  }
  void count(const Message& m) {
    ++tick_total_;
    ++cumulative_total_;
    ++tick_counts_[m.sender];
    ++tick_counts_[m.receiver];
  }
  void finalize_tick() {
    std::int64_t tick_max = 0;
    for (const auto& [node, c] : tick_counts_) tick_max = std::max(tick_max, c);
    max_per_robot_ = std::max(max_per_robot_, tick_max);
    per_tick_totals_.push_back(tick_total_);
    per_tick_max_.push_back(tick_max);
  }

  std::int64_t cumulative_total() const { return cumulative_total_; }
  std::int64_t max_per_robot() const { return max_per_robot_; }
  const std::vector<std::int64_t>& per_tick_totals() const { return per_tick_totals_; }
  const std::vector<std::int64_t>& per_tick_max() const { return per_tick_max_; }

 private:
  std::int64_t current_tick_ = 0;
  std::int64_t tick_total_ = 0;
  std::map<int, std::int64_t> tick_counts_;
  std::int64_t cumulative_total_ = 0;
  std::int64_t max_per_robot_ = 0;
  std::vector<std::int64_t> per_tick_totals_;
  std::vector<std::int64_t> per_tick_max_;
};

// Messages must travel along current topology edges.
inline void route_and_count(const std::vector<Message>& messages,
                            const NetworkTopology& topo, TrafficLedger& ledger) {
  for (const auto& m : messages) {
    if (!topo.has_edge(m.sender, m.receiver))
      throw IllegalRoute("message between unlinked nodes " + std::to_string(m.sender) +
                         " -> " + std::to_string(m.receiver));
    ledger.count(m);
  }
}

// caterpillar: every ground node is a leaf and the UAV-induced subgraph is a
// single path (each UAV has at most two UAV neighbours, at most two ends).
inline bool is_caterpillar(const NetworkTopology& topo) {
  std::vector<int> uavs;
  for (int n : topo.nodes)
    if (is_uav_node(n)) uavs.push_back(n);
  if (uavs.empty()) return false;
  for (const auto& [c, p] : topo.parent) {
    if (!is_uav_node(c)) {
      if (!is_uav_node(p)) return false;  // ground node with ground parent
      // ground nodes must be leaves
      for (const auto& [c2, p2] : topo.parent)
        if (p2 == c) return false;
    }
  }
  std::map<int, int> uav_degree;
  int uav_edges = 0;
  for (const auto& [c, p] : topo.parent) {
    if (is_uav_node(c) && is_uav_node(p)) {
      ++uav_degree[c];
      ++uav_degree[p];
      ++uav_edges;
    }
  }
  if (uav_edges != static_cast<int>(uavs.size()) - 1) return false;  // not a single tree
  int ends = 0;
  for (int u : uavs) {
    int d = uav_degree.count(u) ? uav_degree[u] : 0;
    if (d > 2) return false;
    if (d <= 1) ++ends;
  }
  return uavs.size() == 1 || ends == 2;
}

inline bool is_star(const NetworkTopology& topo) {
  if (!topo.brain) return false;
  for (const auto& [c, p] : topo.parent) {
    if (p != *topo.brain) return false;
    if (is_uav_node(c)) return false;
  }
  return true;
}

struct ConnectivityRecord {
  std::int64_t tick = 0;
  std::vector<bool> uav_connected;  // indexed by uav id order
};

struct DisconnectionReport {
  bool permanent = false;
  std::int64_t first_tick = -1;
};

// true iff some UAV loses its path to the brain at some tick and never
// regains it before run end
inline DisconnectionReport detect_permanent_disconnection(
    const std::vector<ConnectivityRecord>& history) {
  DisconnectionReport report;
  if (history.empty()) return report;
  std::size_t n = history.front().uav_connected.size();
  for (std::size_t u = 0; u < n; ++u) {
    std::int64_t candidate = -1;
    for (const auto& rec : history) {
      if (!rec.uav_connected[u]) {
        if (candidate < 0) candidate = rec.tick;
      } else {
        candidate = -1;
      }
    }
    if (candidate >= 0 && (!report.permanent || candidate < report.first_tick)) {
      report.permanent = true;
      report.first_tick = candidate;
    }
  }
  return report;
}

}  // namespace swarmcover::network
