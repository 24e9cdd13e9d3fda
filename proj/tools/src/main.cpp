// Command line front end: `gridmind run` executes an experiment and
// writes its CSVs plus a manifest, `gridmind probe` replays a frozen
// probe against a saved snapshot.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gridmind/experiment.hpp"

namespace {

std::vector<int64_t> parse_schedule(const std::string& csv) {
  std::vector<int64_t> out;
  std::string tok;
  std::istringstream is(csv);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoll(tok));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridmind: spiking semantic-memory agent in a gridworld"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment");
  int experiment = 1;
  int trials = 50;
  uint64_t seed = 1;
  std::string world_path, schedule_csv, out_dir = "out", params_path;
  int64_t snapshot_every = 0;
  int threads = 0;
  run->add_option("--experiment", experiment, "experiment id (1, 2 or 3)")
      ->check(CLI::Range(1, 3));
  run->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "master seed");
  run->add_option("--world", world_path, "world description file");
  run->add_option("--schedule", schedule_csv,
                  "comma-separated series lengths (overrides the preset)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--params", params_path, "JSON parameter overrides");
  run->add_option("--snapshot-every", snapshot_every,
                  "write a snapshot at series ends divisible by N");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* probe = app.add_subcommand("probe", "probe a saved snapshot");
  std::string snapshot_path, probe_kind = "hit", probe_world, probe_out = "out";
  probe->add_option("--snapshot", snapshot_path, "snapshot file")->required();
  probe->add_option("--kind", probe_kind, "probe kind: hit or sound")
      ->check(CLI::IsMember({"hit", "sound"}));
  probe->add_option("--world", probe_world, "world description file");
  probe->add_option("--out", probe_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      gridmind::ExperimentConfig cfg;
      cfg.experiment_id = experiment;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.out_dir = out_dir;
      cfg.snapshot_every = snapshot_every;
      cfg.threads = threads;
      if (!world_path.empty()) cfg.world_path = world_path;
      if (!schedule_csv.empty()) cfg.schedule = parse_schedule(schedule_csv);
      if (!params_path.empty())
        cfg.params = gridmind::load_params_file(params_path);

      const auto result = gridmind::run_experiment(cfg);
      double mean_clock = 0.0;
      for (double t : result.trial_wall_clock_s) mean_clock += t;
      mean_clock /= static_cast<double>(result.trial_wall_clock_s.size());
      std::cout << "experiment " << experiment << ": " << trials
                << " trial(s) done, mean wall clock "
                << mean_clock << " s/trial, results in " << out_dir << "\n";
      return 0;
    }

    // probe subcommand
    gridmind::Snapshot snap = gridmind::load_snapshot(snapshot_path);
    std::filesystem::create_directories(probe_out);
    if (probe_kind == "hit") {
      // default to the world embedded in the snapshot
      gridmind::WorldModel world =
          !probe_world.empty() ? gridmind::load_world_file(probe_world)
          : !snap.world_text.empty()
              ? gridmind::load_world(snap.world_text)
              : gridmind::load_world(gridmind::default_world_text());
      if (world.checksum() != snap.world_checksum)
        std::cerr << "warning: world checksum differs from the snapshot's\n";
      // probe the world as it stood when the snapshot was taken
      world.apply_events(snap.agent.step_count);
      const auto records = gridmind::frozen_hit_correctness_probe(
          snap.net, world, snap.agent.step_count);
      const auto path =
          (std::filesystem::path(probe_out) / "hit_correctness.csv").string();
      gridmind::write_hit_correctness_csv(path, records);
      std::cout << "wrote " << path << "\n";
    } else {
      const auto rec =
          gridmind::sound_rule_probe(snap.net, snap.agent.step_count);
      const auto path =
          (std::filesystem::path(probe_out) / "soundrule.csv").string();
      gridmind::write_sound_rule_csv(
          path, {{rec.series_end_step, rec.northwall_predicted ? 100.0 : 0.0,
                  rec.southwall_predicted ? 100.0 : 0.0}});
      std::cout << "wrote " << path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
