#pragma once

#include <vector>

#include "gridmind/network.hpp"

namespace gridmind {

struct OFiringResult {
  std::vector<int32_t> input_sum_o;  // per O-neuron
  NeuronSet fired_o;
};

// Forward spiking of O-neurons: whole argmax tie-classes of over-threshold
// activation fire in descending order until tnb_fired_o is reached (a tie
// class can push past the target) or no candidate remains.
OFiringResult spike_o(const NeuronSet& input_lo, const IntMat& cnx_lo,
                      const std::vector<int32_t>& sto, const Params& p);

// Backward retrieval: fired O-neurons drive L-neurons through connections
// above noise_o; L fires above stl, in descending tie-class order, and a
// fired L permanently inhibits all mutually exclusive L-neurons. Within a
// tie class neurons are taken in ascending index order so exclusive pairs
// can never fire together.
NeuronSet backward_spike_l(const NeuronSet& fired_o, const IntMat& cnx_lo,
                           const Params& p);

// Under-use boost: grows linearly with time since the last spike.
inline double boost_coefficient(int64_t last_spiked, int boost_param) {
  return static_cast<double>(last_spiked + boost_param) / boost_param;
}

// Boosted input sums over O minus learning_o:
// (last_spiked + boost_param_o) / boost_param_o times the raw sum.
// Returned pairs are in ascending neuron order.
std::vector<std::pair<int, double>> boost_input_lo(
    const NeuronSet& learning_o, const std::vector<int32_t>& input_sum_o,
    const std::vector<int64_t>& last_spiked_o, const Params& p);

// Object-concept learning. Mutates cnx_lo; column sums stay at ws_o.
void learn_o(const NeuronSet& input_lo, const std::vector<int32_t>& input_sum_o,
             const NeuronSet& fired_o, IntMat& cnx_lo,
             const std::vector<int64_t>& last_spiked_o, const Params& p,
             RngStream& rng);

// Whole argmax classes of a (neuron, value) dictionary, consumed in
// descending value order until `target` entries are collected or the
// dictionary runs out. Shared by the spiking/learning selection loops.
void admit_argmax_classes(std::vector<std::pair<int, double>>& dict,
                          size_t target, NeuronSet& selected);

}  // namespace gridmind
