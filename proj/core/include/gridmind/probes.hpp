#pragma once

#include <map>
#include <vector>

#include "gridmind/metrics.hpp"
#include "gridmind/snapshot.hpp"

namespace gridmind {

// Frozen-network probe: for every box and all eight moves, observe the
// box (spike_o only, no learning), query the expected outcome and compare
// against the world's actual outcome ({Failure} on a blocked move, else
// the arrival feature set). Hits/presence/prediction counts pool into the
// seven feature classes, attributed to the depart box's room. Read-only.
std::vector<HitCorrectnessRecord> frozen_hit_correctness_probe(
    const NetworkState& net, const WorldModel& world, int64_t series_end_step);

// Pools raw per-trial counts (same series/rooms across trials) and
// recomputes the percentages.
std::vector<HitCorrectnessRecord> pool_hit_correctness(
    const std::vector<std::vector<HitCorrectnessRecord>>& per_trial);

// Queries with the Sound neuron as the only depart information, once for
// a north move and once for a south move; records whether NorthWall
// (resp. SouthWall) was among the predictions. Other features ignored.
SoundRuleRecord sound_rule_probe(const NetworkState& net,
                                 int64_t series_end_step);

// Exploitation-mode choice from every distinct Room-2 feature set,
// evaluated against each box of that type; tie-breaking draws come from
// the caller's probe stream, never a trial stream.
OutcomeShareRecord room2_type_outcome_probe(const NetworkState& net,
                                            const WorldModel& world,
                                            int64_t series_end_step,
                                            RngStream& probe_rng);

}  // namespace gridmind
