#include "gridmind/object_memory.hpp"

#include <algorithm>
#include <stdexcept>

#include "gridmind/features.hpp"

namespace gridmind {

void admit_argmax_classes(std::vector<std::pair<int, double>>& dict,
                          size_t target, NeuronSet& selected) {
  while (selected.size() < target && !dict.empty()) {
    double best = dict.front().second;
    for (const auto& [n, v] : dict) best = std::max(best, v);
    auto it = std::partition(dict.begin(), dict.end(),
                             [best](const auto& kv) { return kv.second != best; });
    for (auto p = it; p != dict.end(); ++p) selected.push_back(p->first);
    dict.erase(it, dict.end());
  }
  std::sort(selected.begin(), selected.end());
}

OFiringResult spike_o(const NeuronSet& input_lo, const IntMat& cnx_lo,
                      const std::vector<int32_t>& sto, const Params& p) {
  OFiringResult res;
  res.input_sum_o.assign(p.n_o, 0);
  for (int l : input_lo) {
    const int32_t* row = cnx_lo.row(l);
    for (int o = 0; o < p.n_o; ++o) res.input_sum_o[o] += row[o];
  }

  std::vector<std::pair<int, double>> above;
  for (int o = 0; o < p.n_o; ++o)
    if (res.input_sum_o[o] > sto[o])
      above.push_back({o, static_cast<double>(res.input_sum_o[o] - sto[o])});

  admit_argmax_classes(above, static_cast<size_t>(p.tnb_fired_o), res.fired_o);
  return res;
}

NeuronSet backward_spike_l(const NeuronSet& fired_o, const IntMat& cnx_lo,
                           const Params& p) {
  std::vector<std::pair<int, double>> above;
  for (int l = 0; l < Feature::kLocationCount; ++l) {
    int64_t sum = 0;
    const int32_t* row = cnx_lo.row(l);
    for (int o : fired_o)
      if (row[o] > p.noise_o) sum += row[o];
    if (sum > p.stl) above.push_back({l, static_cast<double>(sum - p.stl)});
  }

  NeuronSet fired;
  std::vector<bool> inhibited(Feature::kLocationCount, false);
  while (!above.empty()) {
    double best = above.front().second;
    for (const auto& [l, v] : above) best = std::max(best, v);
    NeuronSet klass;
    std::erase_if(above, [&](const auto& kv) {
      if (kv.second == best) {
        klass.push_back(kv.first);
        return true;
      }
      return false;
    });
    std::sort(klass.begin(), klass.end());
    for (int l : klass) {
      if (inhibited[l]) continue;
      fired.push_back(l);
      for (int other : exclusive_location_indices(l)) inhibited[other] = true;
    }
  }
  std::sort(fired.begin(), fired.end());
  return fired;
}

std::vector<std::pair<int, double>> boost_input_lo(
    const NeuronSet& learning_o, const std::vector<int32_t>& input_sum_o,
    const std::vector<int64_t>& last_spiked_o, const Params& p) {
  std::vector<std::pair<int, double>> boosted;
  boosted.reserve(input_sum_o.size());
  size_t j = 0;
  for (int o = 0; o < static_cast<int>(input_sum_o.size()); ++o) {
    if (j < learning_o.size() && learning_o[j] == o) {
      ++j;
      continue;
    }
    boosted.push_back(
        {o, input_sum_o[o] * boost_coefficient(last_spiked_o[o], p.boost_param_o)});
  }
  return boosted;
}

void learn_o(const NeuronSet& input_lo, const std::vector<int32_t>& input_sum_o,
             const NeuronSet& fired_o, IntMat& cnx_lo,
             const std::vector<int64_t>& last_spiked_o, const Params& p,
             RngStream& rng) {
  if (input_lo.empty())
    throw std::invalid_argument("learn_o: empty observation");

  NeuronSet learning = fired_o;
  if (learning.size() < static_cast<size_t>(p.tnb_learning_o)) {
    auto boosted = boost_input_lo(learning, input_sum_o, last_spiked_o, p);
    admit_argmax_classes(boosted, static_cast<size_t>(p.tnb_learning_o),
                         learning);
  }

  const auto proba = proba_new_synapses_lo(input_lo, cnx_lo, p);
  const NeuronSet fired_l = backward_spike_l(fired_o, cnx_lo, p);

  if (is_subset(input_lo, fired_l)) {
    // every observed feature was retrieved: reinforce shared features only
    replace_all_inactive_synapses(learning, input_lo, cnx_lo, proba, rng);
    return;
  }

  // something observed was not retrieved: recruit one more argmax class,
  // then fully re-learn the stalest neuron so the complete situation is
  // encoded somewhere
  if (learning.size() < static_cast<size_t>(p.tnb_fired_o)) {
    auto boosted = boost_input_lo(learning, input_sum_o, last_spiked_o, p);
    if (!boosted.empty())
      admit_argmax_classes(boosted, learning.size() + 1, learning);
  }

  int64_t max_last = 0;
  for (int o : learning) max_last = std::max(max_last, last_spiked_o[o]);
  NeuronSet stalest;
  for (int o : learning)
    if (last_spiked_o[o] == max_last) stalest.push_back(o);
  const int max_learn = stalest[rng.uniform_index(stalest.size())];

  NeuronSet rest;
  for (int o : learning)
    if (o != max_learn) rest.push_back(o);

  replace_all_inactive_synapses(rest, input_lo, cnx_lo, proba, rng);
  replace_all_synapses(max_learn, input_lo, cnx_lo, proba, p.ws_o, rng);
}

}  // namespace gridmind
