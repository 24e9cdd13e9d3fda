#include "gridmind/rng.hpp"

#include <numeric>

namespace gridmind {

namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id) {
  uint64_t x = seed ^ (stream_id * 0x9e3779b97f4a7c15ULL);
  for (auto& w : s_) w = splitmix64(x);
  // all-zero state is invalid for xoshiro; splitmix cannot emit four zeros
  // from distinct inputs, but guard anyway
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

uint64_t RngStream::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t RngStream::uniform_index(uint64_t n) {
  // fixed-point multiply; bias of ~n/2^64 is irrelevant at simulator scales
  return static_cast<uint64_t>(
      (static_cast<__uint128_t>(next_u64()) * n) >> 64);
}

double RngStream::uniform_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

size_t RngStream::weighted_pick(const std::vector<double>& cum) {
  const double u = uniform_real() * cum.back();
  size_t lo = 0, hi = cum.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (cum[mid] <= u)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

std::vector<uint32_t> RngStream::sample_without_replacement(uint32_t n,
                                                            uint32_t k) {
  std::vector<uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<uint32_t> out;
  out.reserve(k);
  for (uint32_t i = 0; i < k && i < n; ++i) {
    uint32_t j = i + static_cast<uint32_t>(uniform_index(n - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::vector<double> cumulative(const std::vector<double>& weights) {
  std::vector<double> cum(weights.size());
  double run = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    run += weights[i];
    cum[i] = run;
  }
  return cum;
}

}  // namespace gridmind
