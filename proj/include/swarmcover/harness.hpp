#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "swarmcover/energy.hpp"
#include "swarmcover/io.hpp"
#include "swarmcover/sim.hpp"

namespace swarmcover::harness {

inline int default_jobs() {
  if (const char* env = std::getenv("SWARMCOVER_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Independent runs, any execution order; results are returned sorted by seed
// so downstream output does not depend on the job count.
inline std::vector<sim::RunResult> run_batch(const sim::SimConfig& base,
                                             const std::vector<std::uint64_t>& seeds,
                                             int jobs = 0) {
  if (seeds.empty()) throw ConfigInvalid("run_batch requires at least one seed");
  if (jobs <= 0) jobs = default_jobs();
  std::vector<sim::RunResult> results(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      sim::SimConfig cfg = base;
      cfg.seed = seeds[i];
      try {
        results[i] = sim::run_single(cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        results[i].approach = sim::approach_name(cfg.approach);
        results[i].seed = seeds[i];
        results[i].ticks_executed = -1;  // marks a failed run
      }
    }
  };
  std::vector<std::thread> pool;
  int n_threads = std::min<int>(jobs, static_cast<int>(seeds.size()));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return seeds[a] < seeds[b]; });
  std::vector<sim::RunResult> sorted;
  sorted.reserve(results.size());
  for (std::size_t i : order) sorted.push_back(std::move(results[i]));
  return sorted;
}

inline double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double median_value(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t c = v.size();
  return c % 2 ? v[c / 2] : 0.5 * (v[c / 2 - 1] + v[c / 2]);
}

// ---------------------------------------------------------------------------
// performance campaign (completeness / uniformity table + completeness-by-
// distance curves)

struct PerformanceCell {
  sim::Approach approach;
  int obstacles = 0;
  int runs = 0;
  double mean_completeness = 0.0;
  double median_completeness = 0.0;
  double mean_p_ticks = 0.0;
  double mean_p_seconds = 0.0;
  double mean_round_tick = 0.0;
  double mean_final_completeness = 0.0;  // at 11000 for decentralized
  double mean_final_p_ticks = 0.0;
};

struct PerformanceCampaign {
  std::vector<PerformanceCell> cells;
  std::vector<energy::CompletenessCurve> curves;  // meters-per-sqm abscissa
};

inline PerformanceCell summarize_cell(sim::Approach approach, int obstacles,
                                      const std::vector<sim::RunResult>& results) {
  PerformanceCell cell;
  cell.approach = approach;
  cell.obstacles = obstacles;
  cell.runs = static_cast<int>(results.size());
  std::vector<double> comp, p_ticks, p_sec, round, fin, fin_p;
  for (const auto& r : results) {
    if (r.ticks_executed < 0) continue;
    comp.push_back(r.completeness_at_round);
    p_ticks.push_back(r.p_round_ticks);
    p_sec.push_back(r.p_round_seconds);
    round.push_back(static_cast<double>(r.round_tick));
    fin.push_back(r.completeness_final);
    fin_p.push_back(r.p_final_ticks);
  }
  cell.mean_completeness = mean_of(comp);
  cell.median_completeness = median_value(comp);
  cell.mean_p_ticks = mean_of(p_ticks);
  cell.mean_p_seconds = mean_of(p_sec);
  cell.mean_round_tick = mean_of(round);
  cell.mean_final_completeness = mean_of(fin);
  cell.mean_final_p_ticks = mean_of(fin_p);
  return cell;
}

// average completeness as a function of meters traveled per square meter,
// resampled on a fixed grid so runs can be averaged
inline energy::CompletenessCurve distance_curve(
    const std::string& label, const std::vector<sim::RunResult>& results,
    double area_sqm, double x_max = 5.0, double x_step = 0.01) {
  energy::CompletenessCurve curve;
  curve.label = label;
  int n_points = static_cast<int>(x_max / x_step) + 1;
  std::vector<double> sum(n_points, 0.0);
  int used = 0;
  for (const auto& r : results) {
    if (r.ticks_executed < 0 || r.series.distance_total.empty()) continue;
    ++used;
    std::size_t idx = 0;
    for (int k = 0; k < n_points; ++k) {
      double x = k * x_step;
      double target = x * area_sqm;
      while (idx < r.series.distance_total.size() &&
             r.series.distance_total[idx] < target)
        ++idx;
      double pct;
      if (idx >= r.series.distance_total.size()) {
        pct = r.series.completeness_pct.back();
      } else if (idx == 0) {
        pct = r.series.completeness_pct.front() *
              (r.series.distance_total[0] > 0.0 ? target / r.series.distance_total[0] : 0.0);
      } else {
        double d0 = r.series.distance_total[idx - 1];
        double d1 = r.series.distance_total[idx];
        double u = d1 > d0 ? (target - d0) / (d1 - d0) : 0.0;
        pct = r.series.completeness_pct[idx - 1] +
              u * (r.series.completeness_pct[idx] - r.series.completeness_pct[idx - 1]);
      }
      sum[k] += pct;
    }
  }
  for (int k = 0; k < n_points; ++k) {
    curve.x.push_back(k * x_step);
    curve.pct.push_back(used > 0 ? sum[k] / used : 0.0);
  }
  // enforce monotonicity lost to averaging noise at curve tails
  for (std::size_t k = 1; k < curve.pct.size(); ++k)
    curve.pct[k] = std::max(curve.pct[k], curve.pct[k - 1]);
  return curve;
}

inline PerformanceCampaign replicate_table1(int runs_per_cell, int jobs,
                                            const sim::SimConfig& base_template,
                                            std::uint64_t seed_base = 1) {
  PerformanceCampaign campaign;
  std::vector<std::uint64_t> seeds(runs_per_cell);
  std::iota(seeds.begin(), seeds.end(), seed_base);
  const std::vector<sim::Approach> approaches = {
      sim::Approach::Decentralized, sim::Approach::HybridMns,
      sim::Approach::CentralizedFormation, sim::Approach::Predetermined};
  const std::vector<int> densities = {100, 200, 300};
  std::map<std::string, std::vector<sim::RunResult>> per_approach;
  for (auto approach : approaches) {
    for (int density : densities) {
      sim::SimConfig cfg = base_template;
      cfg.approach = approach;
      cfg.n_uav = -1;
      cfg.obstacle_count = density;
      auto results = run_batch(cfg, seeds, jobs);
      campaign.cells.push_back(summarize_cell(approach, density, results));
      auto& bucket = per_approach[sim::approach_name(approach)];
      for (auto& r : results) bucket.push_back(std::move(r));
    }
  }
  double area = base_template.arena.side_m * base_template.arena.side_m;
  for (auto approach : approaches) {
    const auto& rs = per_approach[sim::approach_name(approach)];
    campaign.curves.push_back(distance_curve(sim::approach_name(approach), rs, area));
  }
  return campaign;
}

inline std::string table1_csv(const PerformanceCampaign& c) {
  std::string out =
      "approach,obstacles,runs,mean_completeness,median_completeness,"
      "mean_p_ticks,mean_p_seconds,mean_round_tick,mean_completeness_final,"
      "mean_p_final_ticks\n";
  for (const auto& cell : c.cells) {
    out += sim::approach_name(cell.approach);
    out += ',' + std::to_string(cell.obstacles);
    out += ',' + std::to_string(cell.runs);
    out += ',' + io::fmt(cell.mean_completeness);
    out += ',' + io::fmt(cell.median_completeness);
    out += ',' + io::fmt(cell.mean_p_ticks);
    out += ',' + io::fmt(cell.mean_p_seconds);
    out += ',' + io::fmt(cell.mean_round_tick);
    out += ',' + io::fmt(cell.mean_final_completeness);
    out += ',' + io::fmt(cell.mean_final_p_ticks);
    out += '\n';
  }
  return out;
}

inline std::string curves_csv(const std::vector<energy::CompletenessCurve>& curves) {
  std::string out = "approach,meters_per_sqm,completeness\n";
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.x.size(); ++i)
      out += c.label + ',' + io::fmt(c.x[i]) + ',' + io::fmt(c.pct[i]) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// scalability campaign (MNS presets, no obstacles)

struct ScalabilityPreset {
  std::string name;
  int n_uav = 0;
  int n_ground = 0;
};

inline std::vector<ScalabilityPreset> scalability_presets() {
  return {{"2+4", 2, 4}, {"4+8", 4, 8}, {"6+12", 6, 12}};
}

struct ScalabilityRow {
  std::string preset;
  int total_robots = 0;
  std::uint64_t seed = 0;
  std::int64_t messages_at_5000 = 0;
  std::int64_t max_per_robot = 0;
  std::int64_t establishment_tick = -1;
  std::int64_t last_collision_tick = -1;
  std::int64_t collisions_total = 0;
};

struct ScalabilityCampaign {
  std::vector<ScalabilityRow> rows;
  double r_squared = 0.0;
  std::int64_t max_per_robot_overall = 0;
  std::vector<double> mean_messages_at_5000;  // per preset
};

inline ScalabilityCampaign replicate_scalability(int seeds_per_size, int jobs,
                                                 const sim::SimConfig& base_template,
                                                 std::uint64_t seed_base = 1) {
  ScalabilityCampaign campaign;
  std::vector<std::uint64_t> seeds(seeds_per_size);
  std::iota(seeds.begin(), seeds.end(), seed_base);
  std::vector<double> xs, ys;
  for (const auto& preset : scalability_presets()) {
    sim::SimConfig cfg = base_template;
    cfg.approach = sim::Approach::HybridMns;
    cfg.n_ground = preset.n_ground;
    cfg.n_uav = preset.n_uav;
    cfg.obstacle_count = 0;
    cfg.horizon_ticks = 5000;
    auto results = run_batch(cfg, seeds, jobs);
    double mean_msg = 0.0;
    for (const auto& r : results) {
      ScalabilityRow row;
      row.preset = preset.name;
      row.total_robots = preset.n_uav + preset.n_ground;
      row.seed = r.seed;
      row.messages_at_5000 = r.messages_total;
      row.max_per_robot = r.max_messages_per_robot;
      row.establishment_tick = r.establishment_tick;
      row.last_collision_tick = r.last_collision_tick;
      row.collisions_total = r.collisions_total;
      campaign.rows.push_back(row);
      campaign.max_per_robot_overall =
          std::max(campaign.max_per_robot_overall, r.max_messages_per_robot);
      xs.push_back(static_cast<double>(row.total_robots));
      ys.push_back(static_cast<double>(row.messages_at_5000));
      mean_msg += static_cast<double>(row.messages_at_5000);
    }
    campaign.mean_messages_at_5000.push_back(mean_msg / seeds_per_size);
  }
  // least squares y = a + b x
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  double b = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  double a = (sy - b * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (a + b * xs[i]);
    ss_res += e * e;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  campaign.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return campaign;
}

inline std::string scalability_csv(const ScalabilityCampaign& c) {
  std::string out =
      "preset,total_robots,seed,messages_at_5000,max_per_robot,"
      "establishment_tick,last_collision_tick,collisions_total\n";
  for (const auto& r : c.rows) {
    out += r.preset + ',' + std::to_string(r.total_robots) + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.messages_at_5000) + ',' +
           std::to_string(r.max_per_robot) + ',' +
           std::to_string(r.establishment_tick) + ',' +
           std::to_string(r.last_collision_tick) + ',' +
           std::to_string(r.collisions_total) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// fault-tolerance campaign (MNS, 100 obstacles, failures at tick 400)

struct FaultCell {
  int k = 0;
  int runs = 0;
  double mean_completeness = 0.0;
  double drop_per_robot = 0.0;  // vs the k = 0 baseline
  int runs_with_disconnection = 0;
};

struct FaultCampaign {
  double baseline_completeness = 0.0;
  std::vector<FaultCell> cells;
  std::vector<std::string> row_csv;
};

inline FaultCampaign replicate_faults(int seeds_per_k, int jobs,
                                      const sim::SimConfig& base_template,
                                      std::uint64_t seed_base = 1,
                                      std::vector<int> ks = {1, 3, 5, 7, 8}) {
  FaultCampaign campaign;
  std::vector<std::uint64_t> seeds(seeds_per_k);
  std::iota(seeds.begin(), seeds.end(), seed_base);

  auto run_k = [&](int k) {
    sim::SimConfig cfg = base_template;
    cfg.approach = sim::Approach::HybridMns;
    cfg.n_uav = -1;
    cfg.obstacle_count = 100;
    cfg.failures.events.clear();
    if (k > 0) cfg.failures.events.push_back({400, {}, k});
    return run_batch(cfg, seeds, jobs);
  };

  auto baseline = run_k(0);
  std::vector<double> base_comp;
  for (const auto& r : baseline) base_comp.push_back(r.completeness_at_round);
  campaign.baseline_completeness = mean_of(base_comp);

  for (int k : ks) {
    auto results = run_k(k);
    FaultCell cell;
    cell.k = k;
    cell.runs = static_cast<int>(results.size());
    std::vector<double> comp;
    for (const auto& r : results) {
      comp.push_back(r.completeness_at_round);
      if (r.disconnection.permanent) ++cell.runs_with_disconnection;
      campaign.row_csv.push_back(
          std::to_string(k) + ',' + std::to_string(r.seed) + ',' +
          io::fmt(r.completeness_at_round) + ',' +
          (r.disconnection.permanent ? "1" : "0") + ',' +
          std::to_string(r.disconnection.first_tick));
    }
    cell.mean_completeness = mean_of(comp);
    cell.drop_per_robot =
        k > 0 ? (campaign.baseline_completeness - cell.mean_completeness) / k : 0.0;
    campaign.cells.push_back(cell);
  }
  return campaign;
}

inline std::string faults_csv(const FaultCampaign& c) {
  std::string out = "k,seed,completeness_at_round,permanent_disconnection,first_tick\n";
  for (const auto& row : c.row_csv) out += row + '\n';
  return out;
}

inline std::string faults_summary_csv(const FaultCampaign& c) {
  std::string out = "k,runs,mean_completeness,drop_per_robot,runs_with_disconnection\n";
  out += "0," + std::to_string(c.cells.empty() ? 0 : c.cells.front().runs) + ',' +
         io::fmt(c.baseline_completeness) + ",0,0\n";
  for (const auto& cell : c.cells) {
    out += std::to_string(cell.k) + ',' + std::to_string(cell.runs) + ',' +
           io::fmt(cell.mean_completeness) + ',' + io::fmt(cell.drop_per_robot) + ',' +
           std::to_string(cell.runs_with_disconnection) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// energy analysis pipeline

struct EnergyAnalysis {
  std::vector<energy::Crossover> crossovers;
  std::string thresholds_csv;  // Table-3 style area buckets
  std::string budget_csv;      // Fig-9/10 style completeness under budgets
};

inline EnergyAnalysis analyze_energy(const std::vector<energy::CompletenessCurve>& curves,
                                     const std::vector<double>& crossover_xs) {
  EnergyAnalysis out;
  out.crossovers = energy::crossover_thresholds(curves);

  std::string th = "row_kind,row_value,decentralized_top_above,centralized_top_above,"
                   "predetermined_top_below,hybrid_beats_decentralized_below\n";
  const std::vector<double> distances_km = {2, 10, 25, 50};
  for (double d : distances_km) {
    auto a = energy::area_thresholds(d * 1000.0, crossover_xs);
    th += "distance_km," + io::fmt(d) + ',' + io::fmt(a[0]) + ',' + io::fmt(a[1]) + ',' +
          io::fmt(a[1]) + ',' + io::fmt(a[2]) + '\n';
  }
  const std::vector<double> speeds = {0.15, 0.5, 1.0, 10.0};
  for (double s : speeds) {
    auto a = energy::area_thresholds_speed_limited(s, crossover_xs);
    th += "speed_mps," + io::fmt(s) + ',' + io::fmt(a[0]) + ',' + io::fmt(a[1]) + ',' +
          io::fmt(a[1]) + ',' + io::fmt(a[2]) + '\n';
  }
  out.thresholds_csv = th;

  // shared-budget analysis: nine ground robots; UAV count per approach
  std::string bd =
      "budget_kj,ground_rate_j_s,uav_rate_j_s,approach,runtime_s,meters_per_sqm,"
      "completeness\n";
  const std::vector<double> budgets = {200.0, 300.0};
  const std::vector<double> ground_rates = {3.0, 25.0, 70.0};
  const std::vector<double> uav_rates = {6.0, 20.0, 40.0, 60.0};
  const double area = 16.0;
  for (double budget : budgets) {
    for (double g : ground_rates) {
      for (double u : uav_rates) {
        for (const auto& curve : curves) {
          int n_uav = 0;
          if (curve.label == "hybrid_mns") n_uav = 3;
          else if (curve.label == "centralized_formation" || curve.label == "predetermined")
            n_uav = 1;
          double runtime = energy::budget_runtime(budget * 1000.0, g, u, 9, n_uav);
          double x = 9.0 * 0.068 * runtime / area;
          double pct = energy::completeness_at(curve, std::min(x, curve.x.back()));
          bd += io::fmt(budget) + ',' + io::fmt(g) + ',' + io::fmt(u) + ',' + curve.label +
                ',' + io::fmt(runtime) + ',' + io::fmt(x) + ',' + io::fmt(pct) + '\n';
        }
      }
    }
  }
  out.budget_csv = bd;
  return out;
}

// ---------------------------------------------------------------------------
// experiment configuration (experiment.json)

struct Experiment {
  sim::SimConfig base;
  std::vector<std::uint64_t> seeds;
  int jobs = 0;
  std::string out_dir;
};

inline Experiment parse_experiment(const io::json& j) {
  Experiment exp;
  try {
    auto approach = sim::approach_from_name(j.at("approach").get<std::string>());
    if (!approach) throw ConfigInvalid("unknown approach");
    exp.base.approach = *approach;
    if (j.contains("n_ground")) exp.base.n_ground = j["n_ground"].get<int>();
    if (j.contains("n_uav")) exp.base.n_uav = j["n_uav"].get<int>();
    if (j.contains("obstacles")) exp.base.obstacle_count = j["obstacles"].get<int>();
    if (j.contains("horizon_ticks"))
      exp.base.horizon_ticks = j["horizon_ticks"].get<std::int64_t>();
    if (j.contains("dt")) exp.base.dt = j["dt"].get<double>();
    if (j.contains("failures")) {
      for (const auto& jf : j["failures"]) {
        faults::FailureEvent ev;
        ev.tick = jf.at("tick").get<std::int64_t>();
        if (jf.contains("ids")) ev.robot_ids = jf["ids"].get<std::vector<int>>();
        if (jf.contains("count")) ev.count = jf["count"].get<int>();
        exp.base.failures.events.push_back(ev);
      }
    }
    if (j.contains("seeds")) {
      const auto& js = j["seeds"];
      if (js.is_array()) {
        exp.seeds = js.get<std::vector<std::uint64_t>>();
      } else {
        std::uint64_t from = js.at("from").get<std::uint64_t>();
        std::uint64_t to = js.at("to").get<std::uint64_t>();
        if (to < from) throw ConfigInvalid("seed range is empty");
        for (std::uint64_t s = from; s <= to; ++s) exp.seeds.push_back(s);
      }
    } else if (j.contains("seed")) {
      exp.seeds.push_back(j["seed"].get<std::uint64_t>());
    } else {
      exp.seeds.push_back(1);
    }
    if (j.contains("jobs")) exp.jobs = j["jobs"].get<int>();
    if (j.contains("out_dir")) exp.out_dir = j["out_dir"].get<std::string>();
  } catch (const io::json::exception& e) {
    throw ConfigInvalid(std::string("experiment config: ") + e.what());
  }
  return exp;
}

inline std::string experiment_schema() {
  return R"({
  "approach": "decentralized | hybrid_mns | centralized_formation | predetermined",
  "n_ground": 9,
  "n_uav": -1,
  "obstacles": 100,
  "dt": 0.1,
  "horizon_ticks": -1,
  "seeds": {"from": 1, "to": 50},
  "failures": [{"tick": 400, "count": 3}],
  "jobs": 0,
  "out_dir": "results"
})";
}

inline std::string batch_csv(const std::vector<sim::RunResult>& results) {
  std::string out =
      "approach,obstacles,seed,round_tick,completeness_at_round,p_round_ticks,"
      "p_round_seconds,completeness_final,p_final_ticks,messages_total,"
      "collisions_total,distance_total,establishment_tick,permanent_disconnection\n";
  for (const auto& r : results) {
    if (r.ticks_executed < 0) continue;
    out += r.approach + ',' + std::to_string(r.obstacle_count) + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.round_tick) + ',' +
           io::fmt(r.completeness_at_round) + ',' + io::fmt(r.p_round_ticks) + ',' +
           io::fmt(r.p_round_seconds) + ',' + io::fmt(r.completeness_final) + ',' +
           io::fmt(r.p_final_ticks) + ',' + std::to_string(r.messages_total) + ',' +
           std::to_string(r.collisions_total) + ',' + io::fmt(r.distance_total) + ',' +
           std::to_string(r.establishment_tick) + ',' +
           (r.disconnection.permanent ? "1" : "0") + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// bundled specification dataset (robot_specs.json)

inline io::json specs_to_json(const std::vector<energy::SpecRow>& rows) {
  io::json arr = io::json::array();
  for (const auto& row : rows) {
    io::json j;
    j["name"] = row.spec.name;
    j["kind"] = row.spec.kind == energy::RobotKind::Ground ? "ground" : "uav";
    if (row.spec.max_speed) j["max_speed_mps"] = *row.spec.max_speed;
    if (row.spec.operating_time_s) j["operating_time_s"] = *row.spec.operating_time_s;
    if (row.spec.consumption_rate) j["consumption_rate_j_s"] = *row.spec.consumption_rate;
    if (row.spec.monetary_cost) {
      j["monetary_cost"] = *row.spec.monetary_cost;
      j["currency"] = row.spec.currency;
    }
    if (row.spec.battery_mah) j["battery_mah"] = *row.spec.battery_mah;
    if (row.spec.battery_v) j["battery_v"] = *row.spec.battery_v;
    auto cell = [](const energy::PrintedCell& c) {
      return io::json{{"value", c.value}, {"quantum", c.quantum}};
    };
    if (row.printed_distance_m) j["printed_distance_m"] = cell(*row.printed_distance_m);
    if (row.printed_joule_per_m) j["printed_joule_per_m"] = cell(*row.printed_joule_per_m);
    if (row.printed_cost_per_m) j["printed_cost_per_m_eur"] = cell(*row.printed_cost_per_m);
    if (!row.notes.empty()) j["notes"] = row.notes;
    arr.push_back(j);
  }
  return arr;
}

inline std::vector<energy::CompletenessCurve> curves_from_csv(const std::string& text) {
  std::vector<energy::CompletenessCurve> curves;
  std::map<std::string, std::size_t> index;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ConfigInvalid("curves csv: expected label,x,completeness");
    std::string label = line.substr(0, c1);
    double x = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    double pct = std::stod(line.substr(c2 + 1));
    auto it = index.find(label);
    if (it == index.end()) {
      index[label] = curves.size();
      curves.push_back({label, {}, {}});
      it = index.find(label);
    }
    curves[it->second].x.push_back(x);
    curves[it->second].pct.push_back(pct);
  }
  return curves;
}

}  // namespace swarmcover::harness
