#include "gridmind/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridmind/features.hpp"

namespace gridmind {

bool set_contains(const NeuronSet& s, int n) {
  return std::binary_search(s.begin(), s.end(), n);
}

NeuronSet set_minus(const NeuronSet& a, const NeuronSet& b) {
  NeuronSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool is_subset(const NeuronSet& a, const NeuronSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string validate_params(const Params& p) {
  if (p.n_o < 1) return "n_o must be >= 1";
  if (p.n_a < 1) return "n_a must be >= 1";
  if (p.ws_o < 1) return "ws_o must be >= 1";
  if (p.ws_a < 1) return "ws_a must be >= 1";
  if (p.ws_o <= p.noise_o) return "ws_o must exceed noise_o";
  if (p.ws_a <= p.noise_a) return "ws_a must exceed noise_a";
  if (p.sto_min > p.sto_max) return "sto_min must be <= sto_max";
  if (p.sto_min < 1) return "sto_min must be >= 1";
  if (p.tnb_fired_o < 1 || p.tnb_fired_o > p.n_o)
    return "tnb_fired_o must be in [1, n_o]";
  if (p.tnb_learning_o < 1 || p.tnb_learning_o > p.n_o)
    return "tnb_learning_o must be in [1, n_o]";
  if (p.tnb_query_o < 1 || p.tnb_query_o > p.n_o)
    return "tnb_query_o must be in [1, n_o]";
  if (p.tnb_fired_a < 1 || p.tnb_fired_a > p.n_a)
    return "tnb_fired_a must be in [1, n_a]";
  if (p.tnb_learning_a < 1 || p.tnb_learning_a > p.n_a)
    return "tnb_learning_a must be in [1, n_a]";
  if (p.tnb_query_a < 1 || p.tnb_query_a > p.n_a)
    return "tnb_query_a must be in [1, n_a]";
  if (p.boost_param_o < 1) return "boost_param_o must be >= 1";
  if (p.boost_param_a < 1) return "boost_param_a must be >= 1";
  if (p.last_spiked_o_init_max < 1)
    return "last_spiked_o_init_max must be >= 1";
  if (p.last_spiked_a_init_max < 1)
    return "last_spiked_a_init_max must be >= 1";
  if (p.min_coef_mod_cnx > p.max_coef_mod_cnx)
    return "min_coef_mod_cnx must be <= max_coef_mod_cnx";
  return {};
}

namespace {

// One column of `ws` synapses, each drawn uniformly over the input layer.
void init_column(IntMat& cnx, int col, int ws, RngStream& rng) {
  for (int k = 0; k < ws; ++k) {
    int row = static_cast<int>(rng.uniform_index(cnx.rows()));
    ++cnx(row, col);
  }
}

}  // namespace

NetworkState init_network(const Params& params, RngStream& rng) {
  if (auto err = validate_params(params); !err.empty())
    throw std::invalid_argument("invalid params: " + err);

  NetworkState net;
  net.params = params;
  net.cnx_lo = IntMat(Feature::kLocationCount, params.n_o);
  net.cnx_oa1 = IntMat(params.n_o, params.n_a);
  net.cnx_ma2 = IntMat(Feature::kMotorCount, params.n_a);
  net.cnx_oa3 = IntMat(params.n_o + 1, params.n_a);

  // draw order is fixed: cnx_lo columns, then oa1, ma2, oa3, then
  // thresholds, then last-spike vectors
  for (int o = 0; o < params.n_o; ++o) init_column(net.cnx_lo, o, params.ws_o, rng);
  for (int a = 0; a < params.n_a; ++a) init_column(net.cnx_oa1, a, params.ws_a, rng);
  for (int a = 0; a < params.n_a; ++a) init_column(net.cnx_ma2, a, params.ws_a, rng);
  for (int a = 0; a < params.n_a; ++a) init_column(net.cnx_oa3, a, params.ws_a, rng);

  net.sto.resize(params.n_o);
  net.backward_sto.resize(params.n_o);
  const int span = params.sto_max - params.sto_min + 1;
  for (int o = 0; o < params.n_o; ++o) {
    net.sto[o] = params.sto_min + static_cast<int32_t>(rng.uniform_index(span));
    net.backward_sto[o] = net.sto[o] / 3;
  }

  net.last_spiked_o.resize(params.n_o);
  for (auto& v : net.last_spiked_o)
    v = 1 + static_cast<int64_t>(rng.uniform_index(params.last_spiked_o_init_max));
  net.last_spiked_a.resize(params.n_a);
  for (auto& v : net.last_spiked_a)
    v = 1 + static_cast<int64_t>(rng.uniform_index(params.last_spiked_a_init_max));

  return net;
}

namespace {

std::vector<double> normalize_sgr(std::vector<double> sgr) {
  double total = 0.0;
  for (double v : sgr) total += v;
  for (double& v : sgr) v /= total;
  return sgr;
}

}  // namespace

std::vector<double> proba_new_synapses_lo(const NeuronSet& input_lo,
                                          const IntMat& cnx_lo,
                                          const Params& p) {
  if (input_lo.empty())
    throw std::invalid_argument("proba_new_synapses_lo: empty input set");
  std::vector<double> sgr;
  sgr.reserve(input_lo.size());
  for (int l : input_lo) {
    const double fwd = static_cast<double>(cnx_lo.row_sum(l));
    sgr.push_back(std::tanh((-fwd + p.sgr_lo_offset) / p.sgr_lo_slope) +
                  p.sgr_lo_base);
  }
  return normalize_sgr(std::move(sgr));
}

std::vector<double> proba_new_synapses_a(const NeuronSet& input_set,
                                         const IntMat& cnx, const Params& p) {
  if (input_set.empty())
    throw std::invalid_argument("proba_new_synapses_a: empty input set");
  std::vector<double> sgr;
  sgr.reserve(input_set.size());
  for (int n : input_set) {
    const double fwd = static_cast<double>(cnx.row_sum(n));
    sgr.push_back(std::tanh((-fwd + p.sgr_a_offset) / p.sgr_a_slope) +
                  p.sgr_a_base);
  }
  return normalize_sgr(std::move(sgr));
}

namespace {

// rows of the matrix not in input_set
std::vector<int> inactive_rows(int n_rows, const NeuronSet& input_set) {
  std::vector<int> out;
  out.reserve(n_rows - input_set.size());
  size_t j = 0;
  for (int r = 0; r < n_rows; ++r) {
    if (j < input_set.size() && input_set[j] == r)
      ++j;
    else
      out.push_back(r);
  }
  return out;
}

void add_drawn_synapses(IntMat& cnx, int col, const NeuronSet& input_set,
                        const std::vector<double>& cum, int count,
                        RngStream& rng) {
  for (int k = 0; k < count; ++k) {
    int n = input_set[rng.weighted_pick(cum)];
    ++cnx(n, col);
  }
}

// expanded multiset of synapse instances over the given rows of a column
std::vector<int> expand_synapses(const IntMat& cnx, int col,
                                 const std::vector<int>& rows) {
  std::vector<int> instances;
  for (int r : rows) {
    const int w = cnx(r, col);
    for (int i = 0; i < w; ++i) instances.push_back(r);
  }
  return instances;
}

void delete_sampled(IntMat& cnx, int col, const std::vector<int>& instances,
                    int count, RngStream& rng) {
  auto picks = rng.sample_without_replacement(
      static_cast<uint32_t>(instances.size()), static_cast<uint32_t>(count));
  for (uint32_t idx : picks) --cnx(instances[idx], col);
}

}  // namespace

void replace_all_inactive_synapses(const NeuronSet& learning_set,
                                   const NeuronSet& input_set, IntMat& cnx,
                                   const std::vector<double>& proba,
                                   RngStream& rng) {
  const auto inactive = inactive_rows(cnx.rows(), input_set);
  const auto cum = cumulative(proba);
  for (int n : learning_set) {
    int deleted = 0;
    for (int r : inactive) {
      deleted += cnx(r, n);
      cnx(r, n) = 0;
    }
    add_drawn_synapses(cnx, n, input_set, cum, deleted, rng);
  }
}

void replace_all_synapses(int neuron, const NeuronSet& input_set, IntMat& cnx,
                          const std::vector<double>& proba, int column_weight,
                          RngStream& rng) {
  for (int r = 0; r < cnx.rows(); ++r) cnx(r, neuron) = 0;
  add_drawn_synapses(cnx, neuron, input_set, cumulative(proba), column_weight,
                     rng);
}

void replace_some_inactive_synapses(const NeuronSet& learning_set,
                                    const NeuronSet& input_set, IntMat& cnx,
                                    const std::vector<double>& proba,
                                    const std::vector<int>& lr,
                                    RngStream& rng) {
  const auto inactive = inactive_rows(cnx.rows(), input_set);
  const auto cum = cumulative(proba);
  for (size_t i = 0; i < learning_set.size(); ++i) {
    const int a = learning_set[i];
    const auto instances = expand_synapses(cnx, a, inactive);
    const int count = std::min<int>(static_cast<int>(instances.size()), lr[i]);
    if (count == 0) continue;
    delete_sampled(cnx, a, instances, count, rng);
    add_drawn_synapses(cnx, a, input_set, cum, count, rng);
  }
}

void replace_all_inactive_plus_some_active(const NeuronSet& learning_set,
                                           const NeuronSet& input_set,
                                           IntMat& cnx,
                                           const std::vector<double>& proba,
                                           const std::vector<int>& lr,
                                           RngStream& rng) {
  const auto inactive = inactive_rows(cnx.rows(), input_set);
  const auto cum = cumulative(proba);
  for (size_t i = 0; i < learning_set.size(); ++i) {
    const int a = learning_set[i];
    int deleted = 0;
    for (int r : inactive) {
      deleted += cnx(r, a);
      cnx(r, a) = 0;
    }
    const int remains = std::max(0, lr[i] - deleted);
    if (remains > 0) {
      // lr <= ws implies remains never exceeds the active weight
      const auto active = expand_synapses(cnx, a, input_set);
      const int count = std::min<int>(static_cast<int>(active.size()), remains);
      delete_sampled(cnx, a, active, count, rng);
      deleted += count;
    }
    add_drawn_synapses(cnx, a, input_set, cum, deleted, rng);
  }
}

void update_last_spikes(std::vector<int64_t>& last_spikes,
                        const NeuronSet& fired) {
  size_t j = 0;
  for (size_t n = 0; n < last_spikes.size(); ++n) {
    if (j < fired.size() && fired[j] == static_cast<int>(n)) {
      last_spikes[n] = 1;
      ++j;
    } else {
      ++last_spikes[n];
    }
  }
}

}  // namespace gridmind
