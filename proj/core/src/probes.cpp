#include "gridmind/probes.hpp"

#include <algorithm>

#include "gridmind/object_memory.hpp"
#include "gridmind/query.hpp"

namespace gridmind {

namespace {

NeuronSet location_neurons(FeatureSet features) {
  NeuronSet out;
  for (Feature f : features.to_vector()) out.push_back(f.location_index());
  return out;
}

struct ClassCounts {
  int64_t present = 0;
  int64_t predicted = 0;
  int64_t hits = 0;
};

}  // namespace

std::vector<HitCorrectnessRecord> frozen_hit_correctness_probe(
    const NetworkState& net, const WorldModel& world,
    int64_t series_end_step) {
  // counts[room][class]
  std::map<int, std::array<ClassCounts, 7>> counts;

  for (const auto& [coord, box] : world.boxes()) {
    const NeuronSet input_lo = location_neurons(box.features);
    const NeuronSet fired_o =
        spike_o(input_lo, net.cnx_lo, net.sto, net.params).fired_o;
    auto& room_counts = counts[box.room];

    for (Move m : kAllMoves) {
      NeuronSet input_ma2;
      for (Feature f : motor_features(m).to_vector())
        input_ma2.push_back(f.motor_index());
      std::sort(input_ma2.begin(), input_ma2.end());

      const FeatureSet predicted =
          query(fired_o, input_ma2, net).feature_set();
      const auto outcome = world.calculate_new_loc(coord, m);
      const FeatureSet to_predict =
          outcome.failure ? FeatureSet{Feature::Failure} : outcome.features;

      for (Feature f : to_predict.to_vector()) {
        if (auto c = classify_feature(f)) {
          auto& cc = room_counts[static_cast<int>(*c)];
          ++cc.present;
          if (predicted.contains(f)) ++cc.hits;
        }
      }
      for (Feature f : predicted.to_vector())
        if (auto c = classify_feature(f))
          ++room_counts[static_cast<int>(*c)].predicted;
    }
  }

  std::vector<HitCorrectnessRecord> out;
  for (const auto& [room, room_counts] : counts) {
    for (FeatureClass c : kAllFeatureClasses) {
      const ClassCounts& cc = room_counts[static_cast<int>(c)];
      HitCorrectnessRecord rec;
      rec.series_end_step = series_end_step;
      rec.room = room;
      rec.feature_class = c;
      rec.present = cc.present;
      rec.predicted = cc.predicted;
      rec.hits = cc.hits;
      if (cc.present > 0) rec.hit_rate_pct = 100.0 * cc.hits / cc.present;
      if (cc.predicted > 0)
        rec.correctness_pct = 100.0 * cc.hits / cc.predicted;
      out.push_back(rec);
    }
  }
  return out;
}

std::vector<HitCorrectnessRecord> pool_hit_correctness(
    const std::vector<std::vector<HitCorrectnessRecord>>& per_trial) {
  std::vector<HitCorrectnessRecord> pooled;
  if (per_trial.empty()) return pooled;
  pooled = per_trial.front();
  for (size_t t = 1; t < per_trial.size(); ++t) {
    for (size_t i = 0; i < pooled.size(); ++i) {
      pooled[i].present += per_trial[t][i].present;
      pooled[i].predicted += per_trial[t][i].predicted;
      pooled[i].hits += per_trial[t][i].hits;
    }
  }
  for (auto& rec : pooled) {
    rec.hit_rate_pct.reset();
    rec.correctness_pct.reset();
    if (rec.present > 0) rec.hit_rate_pct = 100.0 * rec.hits / rec.present;
    if (rec.predicted > 0)
      rec.correctness_pct = 100.0 * rec.hits / rec.predicted;
  }
  return pooled;
}

SoundRuleRecord sound_rule_probe(const NetworkState& net,
                                 int64_t series_end_step) {
  SoundRuleRecord rec;
  rec.series_end_step = series_end_step;
  const NeuronSet input_lo = {Feature::Sound.location_index()};
  const NeuronSet fired_o =
      spike_o(input_lo, net.cnx_lo, net.sto, net.params).fired_o;

  auto predicted_for = [&](Move m) {
    NeuronSet input_ma2;
    for (Feature f : motor_features(m).to_vector())
      input_ma2.push_back(f.motor_index());
    std::sort(input_ma2.begin(), input_ma2.end());
    return query(fired_o, input_ma2, net).feature_set();
  };

  rec.northwall_predicted =
      predicted_for(Move::N).contains(Feature::NorthWall);
  rec.southwall_predicted =
      predicted_for(Move::S).contains(Feature::SouthWall);
  return rec;
}

OutcomeShareRecord room2_type_outcome_probe(const NetworkState& net,
                                            const WorldModel& world,
                                            int64_t series_end_step,
                                            RngStream& probe_rng) {
  OutcomeShareRecord rec;
  rec.series_end_step = series_end_step;
  rec.scope = "room2_types";

  // distinct feature sets of Room-2 boxes, with their instances
  std::map<uint64_t, std::vector<Coord>> types;
  for (const auto& [coord, box] : world.boxes())
    if (box.room == 2) types[box.features.bits()].push_back(coord);

  for (const auto& [bits, coords] : types) {
    const Box& sample = world.box_at(coords.front());
    const NeuronSet input_lo = location_neurons(sample.features);
    const NeuronSet fired_o =
        spike_o(input_lo, net.cnx_lo, net.sto, net.params).fired_o;
    const Prediction pred = make_predictions(fired_o, net);
    const Move move =
        make_a_choice(rate_predictions(pred), Mode::Exploitation, probe_rng);

    for (Coord c : coords) {
      ++rec.count;
      const auto outcome = world.calculate_new_loc(c, move);
      if (outcome.failure)
        ++rec.failure_count;
      else if (outcome.features.contains(Feature::KO))
        ++rec.ko_count;
      else
        ++rec.ok_count;
    }
  }
  if (rec.count == 0) {
    rec.no_data = true;
  } else {
    rec.ok_pct = 100.0 * rec.ok_count / rec.count;
    rec.ko_pct = 100.0 * rec.ko_count / rec.count;
    rec.failure_pct = 100.0 * rec.failure_count / rec.count;
  }
  return rec;
}

}  // namespace gridmind
