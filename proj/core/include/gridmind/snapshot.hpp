#pragma once

#include <string>

#include "gridmind/agent.hpp"
#include "gridmind/network.hpp"

namespace gridmind {

// Trial checkpoint: full network state, agent state, RNG stream state and
// the world document the trial ran in (so probes can replay it without
// hunting for the original file).
struct Snapshot {
  NetworkState net;
  AgentState agent;
  std::array<uint64_t, 4> rng_state{};
  uint64_t world_checksum = 0;
  std::string world_text;
};

// Versioned text document; save/load round-trips are bit-exact (the state
// is all integers).
std::string serialize_snapshot(const Snapshot& snap);
Snapshot parse_snapshot(const std::string& text);  // throws std::runtime_error

void save_snapshot(const Snapshot& snap, const std::string& path);
Snapshot load_snapshot(const std::string& path);

// FNV-1a 64 over the serialized form.
uint64_t snapshot_hash(const Snapshot& snap);
uint64_t fnv1a64(const std::string& bytes);

}  // namespace gridmind
