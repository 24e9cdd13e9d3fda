#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gridmind {

// Deterministic random stream: xoshiro256** seeded through SplitMix64.
// The simulator draws exclusively from RngStream so runs are bit-identical
// across platforms for a given seed (std:: distributions are not portable).
//
// Stream discipline: trial i of a run with master seed S uses
// RngStream::for_trial(S, i); frozen probes use RngStream::for_probe(S, i)
// so probing never perturbs the trial stream. Every stochastic call site
// draws in a fixed, documented order.
class RngStream {
 public:
  explicit RngStream(uint64_t seed, uint64_t stream_id = 0);

  static RngStream for_trial(uint64_t seed, uint64_t trial) {
    return RngStream(seed, trial + 1);
  }
  static RngStream for_probe(uint64_t seed, uint64_t trial) {
    return RngStream(seed, (trial + 1) | (uint64_t{1} << 63));
  }

  uint64_t next_u64();

  // uniform integer in [0, n), n >= 1
  uint64_t uniform_index(uint64_t n);

  // uniform double in [0, 1) with 53 bits of precision
  double uniform_real();

  bool coin_flip() { return next_u64() >> 63; }

  // one draw from a weighted distribution given its cumulative sums
  // (cum.back() is the total mass, assumed > 0)
  size_t weighted_pick(const std::vector<double>& cum);

  // k distinct positions sampled from {0..n-1} without replacement,
  // via partial Fisher-Yates; result order is the draw order
  std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t k);

  std::array<uint64_t, 4> state() const { return s_; }
  void set_state(const std::array<uint64_t, 4>& s) { s_ = s; }

 private:
  std::array<uint64_t, 4> s_{};
};

// Running cumulative sums for weighted_pick.
std::vector<double> cumulative(const std::vector<double>& weights);

}  // namespace gridmind
