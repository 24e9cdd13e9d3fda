#pragma once

#include <cstdint>
#include <string>

namespace gridmind {

// Network parameters. Defaults are the reference configuration; all of
// them can be overridden from a JSON params file via the CLI.
struct Params {
  int n_o = 100;  // object-concept neurons
  int n_a = 400;  // action-concept neurons

  int ws_o = 40;  // incoming synapse count on each O-neuron
  int ws_a = 30;  // incoming synapse count on each A-neuron compartment

  int stl = 50;       // L-neuron spike threshold
  int st_fail = 40;   // Failure neuron spike threshold
  int sto_min = 22;   // forward O thresholds drawn uniformly in [sto_min, sto_max]
  int sto_max = 31;
  int learn_at = 55;  // A-neuron learning threshold

  int noise_o = 2;
  int noise_a = 2;

  int tnb_fired_o = 12;
  int tnb_learning_o = 6;
  int tnb_query_o = 6;
  int tnb_fired_a = 4;
  int tnb_learning_a = 4;
  int tnb_query_a = 4;

  int boost_param_o = 50;
  int boost_param_a = 800;

  int64_t last_spiked_o_init_max = 2000;
  int64_t last_spiked_a_init_max = 20000;

  // synapse growth rate curves: tanh((-sum + offset) / slope) + base
  double sgr_lo_offset = 300.0;
  double sgr_lo_slope = 150.0;
  double sgr_lo_base = 2.0;
  double sgr_a_offset = 400.0;
  double sgr_a_slope = 300.0;
  double sgr_a_base = 1.2;

  double min_coef_mod_cnx = 1.0;
  double max_coef_mod_cnx = 2.0;

  bool operator==(const Params&) const = default;
};

// Returns an empty string when valid, otherwise the violated constraint.
std::string validate_params(const Params& p);

}  // namespace gridmind
