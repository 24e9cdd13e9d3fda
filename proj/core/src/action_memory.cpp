#include "gridmind/action_memory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridmind/object_memory.hpp"

namespace gridmind {

namespace {

template <typename MatT>
std::vector<double> sums_impl(const NeuronSet& input_set, const MatT& cnx) {
  std::vector<double> sums(cnx.cols(), 0.0);
  for (int n : input_set) {
    const auto* row = cnx.row(n);
    for (int a = 0; a < cnx.cols(); ++a) sums[a] += row[a];
  }
  return sums;
}

}  // namespace

std::vector<double> input_sums_a(const NeuronSet& input_set,
                                 const IntMat& cnx) {
  return sums_impl(input_set, cnx);
}

std::vector<double> input_sums_a(const NeuronSet& input_set,
                                 const RealMat& cnx) {
  return sums_impl(input_set, cnx);
}

std::vector<double> input_sums_a_scaled(const NeuronSet& input_set,
                                        const std::vector<double>& coefs,
                                        const IntMat& cnx) {
  std::vector<double> sums(cnx.cols(), 0.0);
  for (size_t i = 0; i < input_set.size(); ++i) {
    const int32_t* row = cnx.row(input_set[i]);
    const double c = coefs[i];
    for (int a = 0; a < cnx.cols(); ++a) sums[a] += c * row[a];
  }
  return sums;
}

CombinedSums sum_inputs_a1a2(const std::vector<double>& sum_a1,
                             const std::vector<double>& sum_a2,
                             const Params& p) {
  CombinedSums out;
  for (size_t a = 0; a < sum_a1.size(); ++a) {
    if (sum_a1[a] > p.noise_a && sum_a2[a] > p.noise_a) {
      out.neurons.push_back(static_cast<int>(a));
      out.values.push_back(sum_a1[a] + sum_a2[a]);
    }
  }
  return out;
}

AFiringResult spike_a_from_combined(const CombinedSums& combined,
                                    int target_fired) {
  AFiringResult res;
  res.combined = combined;

  std::vector<double> levels = combined.values;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  size_t fired_count = 0;
  double threshold = 0.0;
  bool any = false;
  for (double level : levels) {
    if (fired_count >= static_cast<size_t>(target_fired)) break;
    threshold = level;
    any = true;
    fired_count = 0;
    for (double v : combined.values)
      if (v >= level) ++fired_count;
  }
  if (any)
    for (size_t i = 0; i < combined.size(); ++i)
      if (combined.values[i] >= threshold)
        res.fired_a.push_back(combined.neurons[i]);
  return res;
}

AFiringResult spike_a(const NeuronSet& input_oa1, const NeuronSet& input_ma2,
                      const IntMat& cnx_oa1, const IntMat& cnx_ma2,
                      const Params& p) {
  const auto s1 = input_sums_a(input_oa1, cnx_oa1);
  const auto s2 = input_sums_a(input_ma2, cnx_ma2);
  return spike_a_from_combined(sum_inputs_a1a2(s1, s2, p), p.tnb_fired_a);
}

NeuronSet select_learning_a(const NeuronSet& input_oa1,
                            const NeuronSet& input_ma2, const IntMat& cnx_oa1,
                            const IntMat& cnx_ma2,
                            const std::vector<int64_t>& last_spiked_a,
                            const Params& p) {
  const auto res = spike_a(input_oa1, input_ma2, cnx_oa1, cnx_ma2, p);

  std::vector<double> value_of(cnx_oa1.cols(), 0.0);
  for (size_t i = 0; i < res.combined.size(); ++i)
    value_of[res.combined.neurons[i]] = res.combined.values[i];

  NeuronSet learning;
  for (int a : res.fired_a)
    if (value_of[a] > p.learn_at) learning.push_back(a);

  if (learning.size() < static_cast<size_t>(p.tnb_learning_a)) {
    std::vector<std::pair<int, double>> boosted;
    for (size_t i = 0; i < res.combined.size(); ++i) {
      const int a = res.combined.neurons[i];
      if (set_contains(learning, a)) continue;
      boosted.push_back({a, res.combined.values[i] *
                                boost_coefficient(last_spiked_a[a],
                                                  p.boost_param_a)});
    }
    admit_argmax_classes(boosted, static_cast<size_t>(p.tnb_learning_a),
                         learning);
  }
  return learning;
}

std::vector<int> calculate_lr(const NeuronSet& learning_a,
                              const std::vector<int64_t>& last_spiked_a,
                              const Params& p, RngStream& rng) {
  if (learning_a.empty())
    throw std::invalid_argument("calculate_lr: empty learning set");
  int64_t mini = last_spiked_a[learning_a.front()];
  int64_t maxi = mini;
  for (int a : learning_a) {
    mini = std::min(mini, last_spiked_a[a]);
    maxi = std::max(maxi, last_spiked_a[a]);
  }
  std::vector<int> lr(learning_a.size(), 1);
  const int64_t diff = maxi - mini;
  if (diff > 0) {
    for (size_t i = 0; i < learning_a.size(); ++i) {
      const double scaled =
          std::ceil(static_cast<double>(last_spiked_a[learning_a[i]]) *
                        p.ws_a / static_cast<double>(diff) -
                    static_cast<double>(mini) * p.ws_a /
                        static_cast<double>(diff));
      lr[i] = std::max(1, std::min(p.ws_a, static_cast<int>(scaled)));
    }
  } else {
    lr[rng.uniform_index(learning_a.size())] = p.ws_a;
  }
  return lr;
}

std::vector<double> modulation_coefs(const NeuronSet& input_set,
                                     const IntMat& cnx, const Params& p) {
  if (input_set.empty())
    throw std::invalid_argument("modulation_coefs: empty input set");
  std::vector<int64_t> fwd;
  fwd.reserve(input_set.size());
  for (int n : input_set) fwd.push_back(cnx.row_sum(n));
  const int64_t max_sum = *std::max_element(fwd.begin(), fwd.end());
  const int64_t min_sum = *std::min_element(fwd.begin(), fwd.end());
  std::vector<double> coefs(input_set.size(), 1.0);
  const int64_t diff = max_sum - min_sum;
  if (diff > 0) {
    const double slope =
        -(p.max_coef_mod_cnx - p.min_coef_mod_cnx) / static_cast<double>(diff);
    for (size_t i = 0; i < input_set.size(); ++i)
      coefs[i] = static_cast<double>(fwd[i]) * slope + p.max_coef_mod_cnx -
                 static_cast<double>(min_sum) * slope;
  }
  return coefs;
}

RealMat modulate_cnx(const NeuronSet& input_set, const IntMat& cnx,
                     const Params& p) {
  const auto coefs = modulation_coefs(input_set, cnx, p);
  RealMat out(cnx.rows(), cnx.cols());
  for (int r = 0; r < cnx.rows(); ++r)
    for (int c = 0; c < cnx.cols(); ++c)
      out(r, c) = static_cast<double>(cnx(r, c));
  for (size_t i = 0; i < input_set.size(); ++i) {
    double* row = out.row(input_set[i]);
    for (int c = 0; c < cnx.cols(); ++c) row[c] *= coefs[i];
  }
  return out;
}

void learn_a(const NeuronSet& input_oa1, const NeuronSet& input_ma2,
             const NeuronSet& input_oa3, IntMat& cnx_oa1, IntMat& cnx_ma2,
             IntMat& cnx_oa3, const NeuronSet& act_result_ineurons,
             const NeuronSet& pred_feat_ineurons,
             const std::vector<int64_t>& last_spiked_a, const Params& p,
             RngStream& rng) {
  const NeuronSet learning = select_learning_a(input_oa1, input_ma2, cnx_oa1,
                                               cnx_ma2, last_spiked_a, p);
  if (learning.empty() || input_oa3.empty()) return;

  // growth-rate distributions are computed once, before any compartment
  // is touched
  const auto proba_oa1 = proba_new_synapses_a(input_oa1, cnx_oa1, p);
  const auto proba_ma2 = proba_new_synapses_a(input_ma2, cnx_ma2, p);
  const auto proba_oa3 = proba_new_synapses_a(input_oa3, cnx_oa3, p);
  const auto lr = calculate_lr(learning, last_spiked_a, p, rng);

  const NeuronSet prediction_errors =
      set_minus(pred_feat_ineurons, act_result_ineurons);
  const NeuronSet missed_features =
      set_minus(act_result_ineurons, pred_feat_ineurons);

  if (prediction_errors.empty() && missed_features.empty()) {
    replace_all_inactive_synapses(learning, input_oa1, cnx_oa1, proba_oa1, rng);
    replace_all_inactive_synapses(learning, input_ma2, cnx_ma2, proba_ma2, rng);
    replace_some_inactive_synapses(learning, input_oa3, cnx_oa3, proba_oa3, lr,
                                   rng);
    return;
  }
  if (!prediction_errors.empty()) {
    replace_all_inactive_plus_some_active(learning, input_oa1, cnx_oa1,
                                          proba_oa1, lr, rng);
    replace_all_inactive_plus_some_active(learning, input_ma2, cnx_ma2,
                                          proba_ma2, lr, rng);
    replace_some_inactive_synapses(learning, input_oa3, cnx_oa3, proba_oa3, lr,
                                   rng);
  }
  if (!missed_features.empty()) {
    replace_all_inactive_plus_some_active(learning, input_oa1, cnx_oa1,
                                          proba_oa1, lr, rng);
    replace_all_inactive_plus_some_active(learning, input_ma2, cnx_ma2,
                                          proba_ma2, lr, rng);
    replace_all_inactive_plus_some_active(learning, input_oa3, cnx_oa3,
                                          proba_oa3, lr, rng);
  }
}

}  // namespace gridmind
