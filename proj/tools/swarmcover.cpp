#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swarmcover/harness.hpp"

namespace fs = std::filesystem;
using namespace swarmcover;

namespace {

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

int run_simulate(const std::string& approach, int obstacles, std::uint64_t seed,
                 int n_ground, int n_uav, std::int64_t horizon,
                 const std::string& arena_json, const std::string& out_dir) {
  sim::SimConfig cfg;
  auto a = sim::approach_from_name(approach);
  if (!a) throw ConfigInvalid("unknown approach: " + approach);
  cfg.approach = *a;
  cfg.obstacle_count = obstacles;
  cfg.seed = seed;
  cfg.n_ground = n_ground;
  cfg.n_uav = n_uav;
  cfg.horizon_ticks = horizon;
  if (!arena_json.empty()) {
    auto [arena, obs] = io::arena_from_json(io::json::parse(io::read_text(arena_json)));
    cfg.arena = arena;
    cfg.fixed_obstacles = obs;
    cfg.obstacle_count = static_cast<int>(obs.size());
  }
  auto result = sim::run_single(cfg);
  auto summary = io::run_summary_json(result);
  std::cout << summary.dump(2) << "\n";
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    io::write_text(join(out_dir, "summary.json"), summary.dump(2) + "\n");
    io::write_text(join(out_dir, "series.csv"), io::run_series_csv(result));
    io::write_text(join(out_dir, "ledger.csv"), io::ledger_csv(result));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmcover: deterministic multi-robot coverage experiments"};
  app.require_subcommand(1);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run a single experiment");
  std::string approach = "decentralized";
  int obstacles = 100;
  std::uint64_t seed = 1;
  int n_ground = 9, n_uav = -1;
  std::int64_t horizon = -1;
  std::string out_dir, arena_json;
  sim_cmd->add_option("--approach", approach, "control approach")->required();
  sim_cmd->add_option("--obstacles", obstacles, "obstacle count");
  sim_cmd->add_option("--seed", seed, "random seed");
  sim_cmd->add_option("--n-ground", n_ground, "ground robots");
  sim_cmd->add_option("--n-uav", n_uav, "UAV supervisors (-1: approach default)");
  sim_cmd->add_option("--horizon", horizon, "tick horizon (-1: auto)");
  sim_cmd->add_option("--arena-json", arena_json, "replay a saved arena layout");
  sim_cmd->add_option("--out", out_dir, "output directory");

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "run a seeded batch from a config file");
  std::string config_path, seeds_arg;
  int jobs = 0;
  batch_cmd->add_option("--config", config_path, "experiment.json")->required();
  batch_cmd->add_option("--seeds", seeds_arg, "inclusive seed range a..b");
  batch_cmd->add_option("--jobs", jobs, "parallel runs (default: SWARMCOVER_JOBS)");

  // canned campaigns
  auto* t1_cmd = app.add_subcommand("replicate-table1", "performance campaign");
  int t1_runs = 50;
  int t1_jobs = 0;
  std::string t1_out = "results/table1";
  t1_cmd->add_option("--runs", t1_runs, "runs per cell");
  t1_cmd->add_option("--jobs", t1_jobs, "parallel runs");
  t1_cmd->add_option("--out", t1_out, "output directory");

  auto* sc_cmd = app.add_subcommand("replicate-scalability", "MNS scalability campaign");
  int sc_runs = 10;
  int sc_jobs = 0;
  std::string sc_out = "results/scalability";
  sc_cmd->add_option("--runs", sc_runs, "runs per system size");
  sc_cmd->add_option("--jobs", sc_jobs, "parallel runs");
  sc_cmd->add_option("--out", sc_out, "output directory");

  auto* ft_cmd = app.add_subcommand("replicate-faults", "fault-tolerance campaign");
  int ft_runs = 10;
  int ft_jobs = 0;
  std::string ft_out = "results/faults";
  ft_cmd->add_option("--runs", ft_runs, "runs per failure count");
  ft_cmd->add_option("--jobs", ft_jobs, "parallel runs");
  ft_cmd->add_option("--out", ft_out, "output directory");

  // energy analysis
  auto* en_cmd = app.add_subcommand("analyze-energy", "energy exhaustion and budget analysis");
  std::string en_curves, en_out = "results/energy";
  bool en_published = false;
  en_cmd->add_option("--curves", en_curves,
                     "completeness curves CSV (default: bundled reference curves)");
  en_cmd->add_flag("--published-crossovers", en_published,
                   "use the published crossover abscissas instead of computed ones");
  en_cmd->add_option("--out", en_out, "output directory");

  // exports
  auto* ea_cmd = app.add_subcommand("export-arena", "write a randomized arena layout");
  std::uint64_t ea_seed = 1;
  int ea_obstacles = 100;
  std::string ea_out = "arena.json";
  ea_cmd->add_option("--seed", ea_seed, "random seed");
  ea_cmd->add_option("--obstacles", ea_obstacles, "obstacle count");
  ea_cmd->add_option("--out", ea_out, "output file");

  auto* es_cmd = app.add_subcommand("export-specs", "write the bundled robot dataset");
  std::string es_out = "robot_specs.json";
  es_cmd->add_option("--out", es_out, "output file");

  auto* el_cmd = app.add_subcommand("export-lanes", "write the boustrophedon lane plan");
  int el_robots = 9;
  std::string el_out = "lanes.json";
  el_cmd->add_option("--n-ground", el_robots, "ground robots");
  el_cmd->add_option("--out", el_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim_cmd->parsed())
      return run_simulate(approach, obstacles, seed, n_ground, n_uav, horizon,
                          arena_json, out_dir);

    if (batch_cmd->parsed()) {
      io::json j;
      try {
        j = io::json::parse(io::read_text(config_path));
      } catch (const io::json::exception& e) {
        std::cerr << "malformed config: " << e.what() << "\nexpected schema:\n"
                  << harness::experiment_schema() << "\n";
        return 1;
      }
      auto exp = harness::parse_experiment(j);
      if (!seeds_arg.empty()) {
        auto dots = seeds_arg.find("..");
        exp.seeds.clear();
        if (dots == std::string::npos) {
          exp.seeds.push_back(std::stoull(seeds_arg));
        } else {
          std::uint64_t from = std::stoull(seeds_arg.substr(0, dots));
          std::uint64_t to = std::stoull(seeds_arg.substr(dots + 2));
          if (to < from) throw ConfigInvalid("seed range is empty");
          for (std::uint64_t s = from; s <= to; ++s) exp.seeds.push_back(s);
        }
      }
      if (jobs > 0) exp.jobs = jobs;
      auto results = harness::run_batch(exp.base, exp.seeds, exp.jobs);
      std::string csv = harness::batch_csv(results);
      if (!exp.out_dir.empty()) {
        ensure_dir(exp.out_dir);
        io::write_text(join(exp.out_dir, "batch.csv"), csv);
      }
      std::cout << csv;
      return 0;
    }

    if (t1_cmd->parsed()) {
      sim::SimConfig base;
      auto campaign = harness::replicate_table1(t1_runs, t1_jobs, base);
      ensure_dir(t1_out);
      io::write_text(join(t1_out, "table1.csv"), harness::table1_csv(campaign));
      io::write_text(join(t1_out, "curves.csv"), harness::curves_csv(campaign.curves));
      std::cout << harness::table1_csv(campaign);
      return 0;
    }

    if (sc_cmd->parsed()) {
      sim::SimConfig base;
      auto campaign = harness::replicate_scalability(sc_runs, sc_jobs, base);
      ensure_dir(sc_out);
      io::write_text(join(sc_out, "scalability.csv"), harness::scalability_csv(campaign));
      std::cout << harness::scalability_csv(campaign);
      std::cout << "r_squared," << io::fmt(campaign.r_squared) << "\n";
      std::cout << "max_per_robot," << campaign.max_per_robot_overall << "\n";
      return 0;
    }

    if (ft_cmd->parsed()) {
      sim::SimConfig base;
      auto campaign = harness::replicate_faults(ft_runs, ft_jobs, base);
      ensure_dir(ft_out);
      io::write_text(join(ft_out, "faults.csv"), harness::faults_csv(campaign));
      io::write_text(join(ft_out, "faults_summary.csv"),
                     harness::faults_summary_csv(campaign));
      std::cout << harness::faults_summary_csv(campaign);
      return 0;
    }

    if (en_cmd->parsed()) {
      std::vector<energy::CompletenessCurve> curves =
          en_curves.empty() ? energy::reference_curves()
                            : harness::curves_from_csv(io::read_text(en_curves));
      std::vector<double> xs;
      if (en_published) {
        xs = energy::published_crossovers();
      } else {
        auto found = energy::crossover_thresholds(curves);
        for (const auto& c : found) xs.push_back(c.x);
        if (xs.empty()) xs = energy::published_crossovers();
      }
      auto analysis = harness::analyze_energy(curves, xs);
      ensure_dir(en_out);
      std::string cross = "x_m_per_sqm,overtaking,overtaken\n";
      for (const auto& c : analysis.crossovers)
        cross += io::fmt(c.x) + ',' + c.overtaking + ',' + c.overtaken + '\n';
      io::write_text(join(en_out, "crossovers.csv"), cross);
      io::write_text(join(en_out, "area_thresholds.csv"), analysis.thresholds_csv);
      io::write_text(join(en_out, "budget_completeness.csv"), analysis.budget_csv);
      std::cout << analysis.thresholds_csv;
      return 0;
    }

    if (ea_cmd->parsed()) {
      world::Arena arena;
      RngStream rng(ea_seed, "placement");
      auto obstacles = world::place_obstacles(rng, ea_obstacles, arena);
      io::write_text(ea_out, io::arena_to_json(arena, obstacles).dump(2) + "\n");
      std::cout << "wrote " << ea_out << "\n";
      return 0;
    }

    if (es_cmd->parsed()) {
      io::write_text(es_out, harness::specs_to_json(energy::builtin_specs()).dump(2) + "\n");
      std::cout << "wrote " << es_out << "\n";
      return 0;
    }

    if (el_cmd->parsed()) {
      world::Arena arena;
      auto plan = controllers::decompose_lanes(el_robots, arena);
      io::json j = io::json::array();
      for (const auto& lane : plan.lanes) {
        io::json jl;
        jl["robot_id"] = lane.robot_id;
        jl["lane_columns"] = {lane.first_column, lane.last_column};
        jl["waypoints"] = io::json::array();
        for (const auto& wp : lane.waypoints) jl["waypoints"].push_back({wp.x, wp.y});
        j.push_back(jl);
      }
      io::write_text(el_out, j.dump(2) + "\n");
      std::cout << "wrote " << el_out << "\n";
      return 0;
    }
  } catch (const PlacementInfeasible& e) {
    std::cerr << "placement infeasible: " << e.what() << "\n";
    return 2;
  } catch (const ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\nexpected schema:\n"
              << harness::experiment_schema() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
