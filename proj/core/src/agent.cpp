#include "gridmind/agent.hpp"

#include <chrono>
#include <stdexcept>

#include "gridmind/action_memory.hpp"
#include "gridmind/object_memory.hpp"

namespace gridmind {

namespace {

NeuronSet location_neurons(FeatureSet features) {
  NeuronSet out;
  for (Feature f : features.to_vector()) out.push_back(f.location_index());
  return out;
}

NeuronSet motor_neurons(Move m) {
  NeuronSet out;
  for (Feature f : motor_features(m).to_vector())
    out.push_back(f.motor_index());
  return out;
}

// I-neuron ids for prediction/outcome comparison: location feature ids
// plus the failure id.
NeuronSet interface_neurons(FeatureSet features) {
  NeuronSet out;
  for (Feature f : features.to_vector()) out.push_back(f.id());
  return out;
}

}  // namespace

StepRecord make_a_step(AgentState& agent, NetworkState& net,
                       const WorldModel& world, RngStream& rng,
                       const StepOptions& opts) {
  const Params& p = net.params;
  StepRecord rec;
  rec.step = agent.step_count + 1;
  rec.depart = agent.depart_loc;

  const NeuronSet input_oa1 = agent.prev_fired_o;
  const ChoiceResult choice = choose_a_move(input_oa1, net, rng);
  rec.move = choice.move;
  rec.mode = choice.mode;
  rec.predicted = choice.predicted_features;

  const NeuronSet input_ma2 = motor_neurons(choice.move);
  const auto outcome = world.calculate_new_loc(agent.depart_loc, choice.move);
  rec.arrival = outcome.arrival;
  rec.failure = outcome.failure;

  NeuronSet fired_o;
  NeuronSet input_oa3;
  NeuronSet act_result;
  if (outcome.failure) {
    fired_o = agent.prev_fired_o;
    input_oa3 = {net.failure_row()};
    act_result = {Feature::kFailureId};
    rec.actual = FeatureSet{Feature::Failure};
  } else {
    const NeuronSet input_lo = location_neurons(outcome.features);
    if (!input_lo.empty()) {
      auto fire = spike_o(input_lo, net.cnx_lo, net.sto, p);
      learn_o(input_lo, fire.input_sum_o, fire.fired_o, net.cnx_lo,
              net.last_spiked_o, p, rng);
      fire = spike_o(input_lo, net.cnx_lo, net.sto, p);
      fired_o = std::move(fire.fired_o);
    }
    input_oa3 = fired_o;
    act_result = input_lo;
    rec.actual = outcome.features;
  }

  const NeuronSet pred_feat = interface_neurons(choice.predicted_features);
  learn_a(input_oa1, input_ma2, input_oa3, net.cnx_oa1, net.cnx_ma2,
          net.cnx_oa3, act_result, pred_feat, net.last_spiked_a, p, rng);

  if (opts.post_learning_probe) {
    rec.post_predicted = query(input_oa1, input_ma2, net).feature_set();
    rec.post_probe_valid = true;
  }

  // re-fire on the modulated matrices: these firings encode the updated
  // action knowledge and are the ones that reset last-spike counters
  NeuronSet fired_a;
  if (!input_oa1.empty() && !input_ma2.empty()) {
    const RealMat mod1 = modulate_cnx(input_oa1, net.cnx_oa1, p);
    const RealMat mod2 = modulate_cnx(input_ma2, net.cnx_ma2, p);
    const auto s1 = input_sums_a(input_oa1, mod1);
    const auto s2 = input_sums_a(input_ma2, mod2);
    fired_a = spike_a_from_combined(sum_inputs_a1a2(s1, s2, p), p.tnb_fired_a)
                  .fired_a;
  }

  agent.depart_loc = outcome.arrival;
  agent.prev_fired_o = fired_o;
  update_last_spikes(net.last_spiked_o, fired_o);
  update_last_spikes(net.last_spiked_a, fired_a);
  ++agent.step_count;
  return rec;
}

TrialResult run_trial(WorldModel world, const std::vector<int64_t>& schedule,
                      NetworkState& net, AgentState& agent, RngStream& rng,
                      const SeriesProbe& probe, const StepOptions& opts) {
  if (schedule.empty())
    throw std::invalid_argument("run_trial: empty schedule");
  for (int64_t s : schedule)
    if (s < 1) throw std::invalid_argument("run_trial: series length must be >= 1");

  TrialResult result;
  int64_t cum = 0;
  for (int64_t s : schedule) {
    cum += s;
    result.series_ends.push_back(cum);
  }
  result.steps.reserve(static_cast<size_t>(cum));

  const auto t0 = std::chrono::steady_clock::now();
  size_t series_idx = 0;
  for (int64_t step = 1; step <= cum; ++step) {
    world.apply_events(step);
    result.steps.push_back(make_a_step(agent, net, world, rng, opts));
    if (step == result.series_ends[series_idx]) {
      if (probe) probe(series_idx, step, net, world, agent);
      ++series_idx;
    }
  }
  result.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace gridmind
