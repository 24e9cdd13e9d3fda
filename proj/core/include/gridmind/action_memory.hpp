#pragma once

#include <vector>

#include "gridmind/network.hpp"

namespace gridmind {

// Combined compartment-1+2 sums, defined only for A-neurons whose two
// sums each exceed noise_a (sequence gating). Ascending neuron order.
struct CombinedSums {
  std::vector<int> neurons;
  std::vector<double> values;

  size_t size() const { return neurons.size(); }
  bool empty() const { return neurons.empty(); }
};

// Per-A-neuron input sum of one compartment over the given input rows.
std::vector<double> input_sums_a(const NeuronSet& input_set, const IntMat& cnx);
std::vector<double> input_sums_a(const NeuronSet& input_set, const RealMat& cnx);
// Same, with per-input-row multipliers (the modulation fast path).
std::vector<double> input_sums_a_scaled(const NeuronSet& input_set,
                                        const std::vector<double>& coefs,
                                        const IntMat& cnx);

CombinedSums sum_inputs_a1a2(const std::vector<double>& sum_a1,
                             const std::vector<double>& sum_a2,
                             const Params& p);

struct AFiringResult {
  CombinedSums combined;
  NeuronSet fired_a;
};

// Dynamic-threshold spiking: the threshold walks down the distinct
// combined values; at each level every neuron at or above it counts as
// fired; stops once tnb_fired_a neurons fire or values run out.
AFiringResult spike_a_from_combined(const CombinedSums& combined,
                                    int target_fired);

AFiringResult spike_a(const NeuronSet& input_oa1, const NeuronSet& input_ma2,
                      const IntMat& cnx_oa1, const IntMat& cnx_ma2,
                      const Params& p);

// Fired neurons with combined sum strictly above learn_at, padded toward
// tnb_learning_a by argmax classes of boosted sums over the neurons that
// received gated input.
NeuronSet select_learning_a(const NeuronSet& input_oa1,
                            const NeuronSet& input_ma2, const IntMat& cnx_oa1,
                            const IntMat& cnx_ma2,
                            const std::vector<int64_t>& last_spiked_a,
                            const Params& p);

// Learning rates aligned with learning_a, each in [1, ws_a]. Stalest
// neuron gets ws_a; when all last-spike values tie, one uniformly random
// neuron gets ws_a and the rest get 1.
std::vector<int> calculate_lr(const NeuronSet& learning_a,
                              const std::vector<int64_t>& last_spiked_a,
                              const Params& p, RngStream& rng);

// Query-time modulation: multiplier for each input row, linear in its
// forward connection sum, max_coef for the smallest sum down to min_coef
// for the largest; all ones when the sums tie.
std::vector<double> modulation_coefs(const NeuronSet& input_set,
                                     const IntMat& cnx, const Params& p);

// The full modulated matrix (rows outside input_set copied unchanged).
RealMat modulate_cnx(const NeuronSet& input_set, const IntMat& cnx,
                     const Params& p);

// Action-concept learning over the three compartments. No-op when no
// neuron qualifies for learning (e.g. the agent's first step).
void learn_a(const NeuronSet& input_oa1, const NeuronSet& input_ma2,
             const NeuronSet& input_oa3, IntMat& cnx_oa1, IntMat& cnx_ma2,
             IntMat& cnx_oa3, const NeuronSet& act_result_ineurons,
             const NeuronSet& pred_feat_ineurons,
             const std::vector<int64_t>& last_spiked_a, const Params& p,
             RngStream& rng);

}  // namespace gridmind
