#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridmind/metrics.hpp"
#include "gridmind/probes.hpp"

namespace gridmind {

struct ExperimentConfig {
  int experiment_id = 1;  // 1, 2 or 3
  int trials = 50;
  uint64_t seed = 1;
  Params params;
  std::optional<std::string> world_path;        // default world when unset
  std::optional<std::vector<int64_t>> schedule;  // preset when unset
  std::string out_dir = ".";
  int64_t snapshot_every = 0;  // 0 disables periodic snapshots
  int threads = 0;             // 0 = hardware concurrency
};

// Preset schedule of an experiment: doubling series up to 32768 for
// experiments 1-2, the 2048-step ramp plus 50x100 for experiment 3.
std::vector<int64_t> experiment_schedule(int experiment_id);

// Events an experiment adds on top of the world's own: none for
// experiment 1, door at step 2048 for experiment 2, door at 2048 plus the
// sound move between the 25th and 26th 100-step series for experiment 3.
std::vector<WorldEvent> experiment_events(int experiment_id);

struct ExperimentResult {
  std::vector<PostLearningRecord> post_learning;        // pooled
  std::vector<HitCorrectnessRecord> hit_correctness;    // pooled
  std::vector<OutcomeShareRecord> outcomes;             // averaged
  struct SoundRulePoint {
    int64_t series_end_step;
    double northwall_pct;
    double southwall_pct;
  };
  std::vector<SoundRulePoint> sound_rule;
  std::vector<double> trial_wall_clock_s;
  uint64_t world_checksum = 0;
};

// Runs the trials (in a worker pool, deterministically aggregated),
// writes postlearning.csv, hit_correctness.csv, outcomes.csv,
// soundrule.csv and manifest.json into out_dir, and returns the pooled
// results.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Building blocks also used by the probe CLI.
void write_post_learning_csv(const std::string& path,
                             const std::vector<PostLearningRecord>& records);
void write_hit_correctness_csv(
    const std::string& path, const std::vector<HitCorrectnessRecord>& records);
void write_outcomes_csv(const std::string& path,
                        const std::vector<OutcomeShareRecord>& records);
void write_sound_rule_csv(
    const std::string& path,
    const std::vector<ExperimentResult::SoundRulePoint>& records);

Params load_params_file(const std::string& path);
WorldModel load_world_file(const std::string& path);

}  // namespace gridmind
