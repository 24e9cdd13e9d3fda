#include "gridmind/query.hpp"

#include <algorithm>
#include <cmath>

#include "gridmind/action_memory.hpp"

namespace gridmind {

FeatureSet QueryResult::feature_set() const {
  FeatureSet fs;
  for (const auto& pf : fired) fs.insert(pf.feature);
  return fs;
}

namespace {

// Inhibition bookkeeping over L-neurons plus the Failure neuron.
struct Inhibition {
  std::vector<bool> l = std::vector<bool>(Feature::kLocationCount, false);
  bool failure = false;

  void fire_l(int l_idx) {
    for (int other : exclusive_location_indices(l_idx)) l[other] = true;
    failure = true;  // every location feature excludes Failure
  }
};

struct BackwardState {
  std::vector<int64_t> sum_ouf;  // size n_o + 1, failure row last
  std::vector<int64_t> sum_l;    // size |L|
  std::vector<PredictedFeature> fired_i;
  std::vector<bool> fired_l_flag = std::vector<bool>(Feature::kLocationCount, false);
  Inhibition inhibited;
  bool fail = false;
};

// Fired A-neurons stream their compartment-3 weight (entries above
// noise_a only) into the O/Failure accumulators; returns the neurons now
// above their backward thresholds. The full fired set contributes at
// every threshold level, which is how repeated spiking shows up here.
std::vector<std::pair<int, double>> accumulate_backward_ouf(
    const NeuronSet& fired_a, const NetworkState& net, BackwardState& bs) {
  const Params& p = net.params;
  std::vector<std::pair<int, double>> above;
  for (int n = 0; n <= p.n_o; ++n) {
    const int32_t* row = net.cnx_oa3.row(n);
    int64_t add = 0;
    for (int a : fired_a)
      if (row[a] > p.noise_a) add += row[a];
    bs.sum_ouf[n] += add;
    const int64_t threshold =
        (n == p.n_o) ? p.st_fail : net.backward_sto[n];
    if (bs.sum_ouf[n] > threshold)
      above.push_back({n, static_cast<double>(bs.sum_ouf[n] - threshold)});
  }
  return above;
}

// One argmax class of the above-threshold O/Failure candidates fires.
// An O-neuron firing first permanently inhibits Failure; Failure firing
// first records itself and aborts the whole query.
NeuronSet backward_spike_ouf(std::vector<std::pair<int, double>>& above,
                             double current_threshold, const NetworkState& net,
                             BackwardState& bs) {
  NeuronSet spiking_o;
  double best = above.front().second;
  for (const auto& [n, v] : above) best = std::max(best, v);
  NeuronSet klass;
  std::erase_if(above, [&](const auto& kv) {
    if (kv.second == best) {
      klass.push_back(kv.first);
      return true;
    }
    return false;
  });
  std::sort(klass.begin(), klass.end());
  for (int n : klass) {
    if (n != net.params.n_o) {
      spiking_o.push_back(n);
      bs.inhibited.failure = true;
    } else if (!bs.inhibited.failure) {
      bs.fired_i.push_back({Feature::Failure, current_threshold});
      bs.fail = true;
    }
  }
  return spiking_o;
}

// Fired O-neurons stream weight into L-neurons; L fires on crossing stl
// (recording the current A-threshold as confidence), resets its
// accumulator, and inhibits its exclusive features.
void backward_spike_i(const NeuronSet& spiking_o, double current_threshold,
                      const NetworkState& net, BackwardState& bs) {
  const Params& p = net.params;
  std::vector<std::pair<int, double>> above_stl;
  for (int l = 0; l < Feature::kLocationCount; ++l) {
    const int32_t* row = net.cnx_lo.row(l);
    for (int o : spiking_o)
      if (row[o] > p.noise_o) bs.sum_l[l] += row[o];
    if (bs.sum_l[l] > p.stl) {
      above_stl.push_back({l, static_cast<double>(bs.sum_l[l] - p.stl)});
      bs.sum_l[l] = 0;
    }
  }
  while (!above_stl.empty()) {
    double best = above_stl.front().second;
    for (const auto& [l, v] : above_stl) best = std::max(best, v);
    NeuronSet klass;
    std::erase_if(above_stl, [&](const auto& kv) {
      if (kv.second == best) {
        klass.push_back(kv.first);
        return true;
      }
      return false;
    });
    std::sort(klass.begin(), klass.end());
    for (int l : klass) {
      if (bs.inhibited.l[l] || bs.fired_l_flag[l]) continue;
      bs.fired_l_flag[l] = true;
      bs.fired_i.push_back({Feature(l), current_threshold});
      bs.inhibited.fire_l(l);
    }
  }
}

}  // namespace

QueryResult query(const NeuronSet& input_oa1, const NeuronSet& input_ma2,
                  const NetworkState& net) {
  QueryResult result;
  if (input_oa1.empty() || input_ma2.empty()) return result;

  const Params& p = net.params;
  const auto coef1 = modulation_coefs(input_oa1, net.cnx_oa1, p);
  const auto coef2 = modulation_coefs(input_ma2, net.cnx_ma2, p);
  const auto s1 = input_sums_a_scaled(input_oa1, coef1, net.cnx_oa1);
  const auto s2 = input_sums_a_scaled(input_ma2, coef2, net.cnx_ma2);
  const CombinedSums combined = sum_inputs_a1a2(s1, s2, p);

  std::vector<double> levels = combined.values;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  BackwardState bs;
  bs.sum_ouf.assign(p.n_o + 1, 0);
  bs.sum_l.assign(Feature::kLocationCount, 0);

  NeuronSet fired_a;
  for (double level : levels) {
    if (fired_a.size() >= static_cast<size_t>(p.tnb_query_a) || bs.fail) break;
    fired_a.clear();
    for (size_t i = 0; i < combined.size(); ++i)
      if (combined.values[i] >= level) fired_a.push_back(combined.neurons[i]);

    auto above = accumulate_backward_ouf(fired_a, net, bs);
    size_t backward_fired_o = 0;
    while (backward_fired_o < static_cast<size_t>(p.tnb_query_o) &&
           !above.empty() && !bs.fail) {
      const NeuronSet spiking_o = backward_spike_ouf(above, level, net, bs);
      backward_fired_o += spiking_o.size();
      for (int o : spiking_o) bs.sum_ouf[o] = 0;
      if (!bs.fail && !spiking_o.empty())
        backward_spike_i(spiking_o, level, net, bs);
    }
  }

  std::sort(bs.fired_i.begin(), bs.fired_i.end(),
            [](const PredictedFeature& a, const PredictedFeature& b) {
              return a.feature.id() < b.feature.id();
            });
  result.fired = std::move(bs.fired_i);
  result.fired_a = std::move(fired_a);
  return result;
}

FeatureSet Prediction::features_for(Move m) const {
  FeatureSet fs;
  for (const auto& pf : per_move[static_cast<int>(m)]) fs.insert(pf.feature);
  return fs;
}

double short_term_memory_coef(const std::vector<int64_t>& last_spiked_a,
                              const NeuronSet& fired_a) {
  double mean_last = 0.0;
  for (int a : fired_a) mean_last += static_cast<double>(last_spiked_a[a]);
  mean_last /= static_cast<double>(fired_a.size());
  return 1.0 + 1.0 / mean_last;
}

Prediction make_predictions(const NeuronSet& input_oa1,
                            const NetworkState& net) {
  Prediction pred;
  for (Move m : kAllMoves) {
    NeuronSet input_ma2;
    for (Feature f : motor_features(m).to_vector())
      input_ma2.push_back(f.motor_index());
    std::sort(input_ma2.begin(), input_ma2.end());

    QueryResult qr = query(input_oa1, input_ma2, net);
    if (qr.empty()) continue;

    const double short_term_coef =
        short_term_memory_coef(net.last_spiked_a, qr.fired_a);

    auto& out = pred.per_move[static_cast<int>(m)];
    out.reserve(qr.fired.size());
    for (const auto& pf : qr.fired)
      out.push_back({pf.feature, pf.confidence * short_term_coef});
  }
  return pred;
}

std::string to_string(Mode m) {
  return m == Mode::Exploration ? "Exploration" : "Exploitation";
}

MoveRating rate_predictions(const Prediction& pred) {
  MoveRating rating;
  for (Move m : kAllMoves) {
    const auto& fired = pred.per_move[static_cast<int>(m)];
    const PredictedFeature* ok = nullptr;
    const PredictedFeature* bad = nullptr;
    for (const auto& pf : fired) {
      if (pf.feature == Feature::OK) ok = &pf;
      if (pf.feature == Feature::KO || pf.feature == Feature::Failure)
        bad = &pf;
    }
    // OK together with KO or Failure cannot co-fire (inhibition); if it
    // ever did, suitable placement wins to keep the partition sound
    if (ok)
      rating.suitable.push_back({m, ok->confidence});
    else if (bad)
      rating.unsuitable.push_back({m, bad->confidence});
    else
      rating.undecided.push_back(m);
  }
  return rating;
}

namespace {

Move pick_extreme(const std::vector<std::pair<Move, double>>& rated,
                  bool want_max, RngStream& rng) {
  double best = rated.front().second;
  for (const auto& [m, c] : rated)
    best = want_max ? std::max(best, c) : std::min(best, c);
  std::vector<Move> ties;
  for (const auto& [m, c] : rated)
    if (c == best) ties.push_back(m);
  return ties[rng.uniform_index(ties.size())];
}

}  // namespace

Move make_a_choice(const MoveRating& rating, Mode mode, RngStream& rng) {
  if (mode == Mode::Exploration) {
    if (!rating.undecided.empty())
      return rating.undecided[rng.uniform_index(rating.undecided.size())];
    std::vector<std::pair<Move, double>> decided = rating.suitable;
    decided.insert(decided.end(), rating.unsuitable.begin(),
                   rating.unsuitable.end());
    return pick_extreme(decided, /*want_max=*/false, rng);
  }
  if (!rating.suitable.empty())
    return pick_extreme(rating.suitable, /*want_max=*/true, rng);
  if (!rating.undecided.empty())
    return rating.undecided[rng.uniform_index(rating.undecided.size())];
  return pick_extreme(rating.unsuitable, /*want_max=*/false, rng);
}

ChoiceResult choose_a_move(const NeuronSet& input_oa1, const NetworkState& net,
                           RngStream& rng) {
  ChoiceResult res;
  res.mode = rng.coin_flip() ? Mode::Exploitation : Mode::Exploration;
  res.prediction = make_predictions(input_oa1, net);
  const MoveRating rating = rate_predictions(res.prediction);
  res.move = make_a_choice(rating, res.mode, rng);
  res.predicted_features = res.prediction.features_for(res.move);
  return res;
}

}  // namespace gridmind
