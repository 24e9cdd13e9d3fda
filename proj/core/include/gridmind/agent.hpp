#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gridmind/query.hpp"
#include "gridmind/world.hpp"

namespace gridmind {

struct AgentState {
  Coord depart_loc{0, 0};
  NeuronSet prev_fired_o;  // empty only before the first step
  int64_t step_count = 0;
};

struct StepRecord {
  int64_t step = 0;  // 1-based
  Coord depart;
  Coord arrival;
  Move move = Move::N;
  Mode mode = Mode::Exploration;
  bool failure = false;
  FeatureSet predicted;  // the prediction that led to the action
  FeatureSet actual;     // {Failure} on a bump, else arrival features
  FeatureSet post_predicted;  // learning-free re-prediction after learning
  bool post_probe_valid = false;
};

struct StepOptions {
  // redo the step's prediction right after action learning, with learning
  // off; feeds the post-learning recall metrics
  bool post_learning_probe = true;
};

// One full step: choose, act, observe, learn objects (unless the move
// failed), learn the action against the step's own prediction, re-fire on
// the modulated matrices, then advance location and last-spike counters
// from the post-learning firings only.
StepRecord make_a_step(AgentState& agent, NetworkState& net,
                       const WorldModel& world, RngStream& rng,
                       const StepOptions& opts = {});

struct TrialResult {
  std::vector<StepRecord> steps;
  std::vector<int64_t> series_ends;  // cumulative step counts
  double wall_clock_seconds = 0.0;
};

// Called after the last step of each series with the frozen state.
using SeriesProbe =
    std::function<void(size_t series_idx, int64_t series_end_step,
                       const NetworkState& net, const WorldModel& world,
                       const AgentState& agent)>;

// Runs sum(schedule) steps from (0,0), applying world events before the
// step whose index equals their at_step. The world is taken by value:
// each trial owns and mutates its copy.
TrialResult run_trial(WorldModel world, const std::vector<int64_t>& schedule,
                      NetworkState& net, AgentState& agent, RngStream& rng,
                      const SeriesProbe& probe = {},
                      const StepOptions& opts = {});

}  // namespace gridmind
