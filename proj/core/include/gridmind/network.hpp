#pragma once

#include <cstdint>
#include <vector>

#include "gridmind/matrix.hpp"
#include "gridmind/params.hpp"
#include "gridmind/rng.hpp"

namespace gridmind {

// Sorted ascending vector of neuron indices. Fixed iteration order keeps
// every stochastic draw sequence reproducible.
using NeuronSet = std::vector<int>;

bool set_contains(const NeuronSet& s, int n);
NeuronSet set_minus(const NeuronSet& a, const NeuronSet& b);
bool is_subset(const NeuronSet& a, const NeuronSet& b);

struct NetworkState {
  Params params;

  // Connection matrices, indexed [input][output]. cnx_oa3 has n_o + 1
  // rows: row n_o is the Failure neuron.
  IntMat cnx_lo;   // |L| x |O|
  IntMat cnx_oa1;  // |O| x |A|
  IntMat cnx_ma2;  // |M| x |A|
  IntMat cnx_oa3;  // (|O|+1) x |A|

  std::vector<int32_t> sto;           // forward O thresholds
  std::vector<int32_t> backward_sto;  // floor(sto/3)

  std::vector<int64_t> last_spiked_o;
  std::vector<int64_t> last_spiked_a;

  int failure_row() const { return params.n_o; }
};

// Random initial state: every O column sums to ws_o, every A compartment
// column to ws_a, each synapse drawn uniformly over its input layer.
// Throws std::invalid_argument naming the violated parameter constraint.
NetworkState init_network(const Params& params, RngStream& rng);

// Synapse growth rates for L-neurons, normalized to a probability
// distribution over input_lo (aligned with it). SGR > 1 always, so the
// distribution is strictly positive.
std::vector<double> proba_new_synapses_lo(const NeuronSet& input_lo,
                                          const IntMat& cnx_lo,
                                          const Params& p);

// Same for inputs of A-compartments (O-, M- or OuF-neurons). SGR > 0.2.
std::vector<double> proba_new_synapses_a(const NeuronSet& input_set,
                                         const IntMat& cnx,
                                         const Params& p);

// The four replacement primitives. All of them preserve per-output-column
// weight sums and never produce a negative weight. Learning neurons are
// processed in ascending index order; each new synapse is one weighted
// draw over input_set (with replacement).

// Zeroes each learning neuron's weight outside input_set and redraws
// exactly that weight onto input_set.
void replace_all_inactive_synapses(const NeuronSet& learning_set,
                                   const NeuronSet& input_set, IntMat& cnx,
                                   const std::vector<double>& proba,
                                   RngStream& rng);

// Zeroes the neuron's whole column and redraws column_weight synapses onto
// input_set.
void replace_all_synapses(int neuron, const NeuronSet& input_set, IntMat& cnx,
                          const std::vector<double>& proba, int column_weight,
                          RngStream& rng);

// Deletes min(inactive weight, lr[a]) inactive synapse instances chosen
// uniformly without replacement, then redraws them onto input_set.
// lr values are aligned with learning_set.
void replace_some_inactive_synapses(const NeuronSet& learning_set,
                                    const NeuronSet& input_set, IntMat& cnx,
                                    const std::vector<double>& proba,
                                    const std::vector<int>& lr,
                                    RngStream& rng);

// Deletes all inactive weight plus max(0, lr[a] - inactive) active synapse
// instances, then redraws the total onto input_set.
void replace_all_inactive_plus_some_active(const NeuronSet& learning_set,
                                           const NeuronSet& input_set,
                                           IntMat& cnx,
                                           const std::vector<double>& proba,
                                           const std::vector<int>& lr,
                                           RngStream& rng);

// Fired entries reset to 1, all others advance by 1.
void update_last_spikes(std::vector<int64_t>& last_spikes,
                        const NeuronSet& fired);

}  // namespace gridmind
