#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmcover/core.hpp"
#include "swarmcover/sim.hpp"
#include "swarmcover/world.hpp"

namespace swarmcover::io {

using nlohmann::json;

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot open for writing: " + path);
  out << content;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// arena layouts (arena.json)

inline json arena_to_json(const world::Arena& arena,
                          const std::vector<world::Obstacle>& obstacles) {
  json j;
  j["side_m"] = arena.side_m;
  j["grid_n"] = arena.grid_n;
  j["obstacles"] = json::array();
  for (const auto& o : obstacles) {
    j["obstacles"].push_back(
        {{"x", o.center.x}, {"y", o.center.y}, {"theta", o.orientation},
         {"half_side", o.half_side}});
  }
  return j;
}

inline std::pair<world::Arena, std::vector<world::Obstacle>> arena_from_json(const json& j) {
  world::Arena arena;
  arena.side_m = j.at("side_m").get<double>();
  arena.grid_n = j.at("grid_n").get<int>();
  std::vector<world::Obstacle> obstacles;
  for (const auto& jo : j.at("obstacles")) {
    world::Obstacle o;
    o.center = {jo.at("x").get<double>(), jo.at("y").get<double>()};
    o.orientation = jo.at("theta").get<double>();
    o.half_side = jo.at("half_side").get<double>();
    obstacles.push_back(o);
  }
  return {arena, obstacles};
}

// ---------------------------------------------------------------------------
// per-run outputs

inline std::string run_series_csv(const sim::RunResult& r) {
  std::string out = "tick,completeness,messages_total,collisions_total,distance_total\n";
  for (std::size_t t = 0; t < r.series.completeness_pct.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += fmt(r.series.completeness_pct[t]);
    out += ',';
    out += std::to_string(r.series.messages_total[t]);
    out += ',';
    out += std::to_string(r.series.collisions_total[t]);
    out += ',';
    out += fmt(r.series.distance_total[t]);
    out += '\n';
  }
  return out;
}

inline std::string ledger_csv(const sim::RunResult& r) {
  std::string out = "tick,total_messages,max_per_robot\n";
  std::int64_t prev = 0;
  for (std::size_t t = 0; t < r.series.messages_total.size(); ++t) {
    std::int64_t total = r.series.messages_total[t] - prev;
    prev = r.series.messages_total[t];
    out += std::to_string(t + 1);
    out += ',';
    out += std::to_string(total);
    out += ',';
    out += std::to_string(r.series.messages_max_per_robot[t]);
    out += '\n';
  }
  return out;
}

inline json run_summary_json(const sim::RunResult& r) {
  json j;
  j["approach"] = r.approach;
  j["seed"] = r.seed;
  j["n_ground"] = r.n_ground;
  j["n_uav"] = r.n_uav;
  j["obstacles"] = r.obstacle_count;
  j["dt"] = r.dt;
  j["ticks_executed"] = r.ticks_executed;
  j["round_tick"] = r.round_tick;
  j["establishment_tick"] = r.establishment_tick;
  j["completeness_at_round"] = r.completeness_at_round;
  j["completeness_final"] = r.completeness_final;
  j["p_at_round"] = {{"ticks", r.p_round_ticks}, {"seconds", r.p_round_seconds}};
  j["p_final"] = {{"ticks", r.p_final_ticks}, {"seconds", r.p_final_seconds}};
  j["messages_total"] = r.messages_total;
  j["max_messages_per_robot"] = r.max_messages_per_robot;
  j["collisions_total"] = r.collisions_total;
  j["distance_total"] = r.distance_total;
  j["disconnection"] = {{"permanent", r.disconnection.permanent},
                        {"first_tick", r.disconnection.first_tick}};
  j["failures"] = json::array();
  for (const auto& f : r.failures_applied)
    j["failures"].push_back({{"tick", f.tick}, {"robot", f.robot_id}});
  return j;
}

}  // namespace swarmcover::io
