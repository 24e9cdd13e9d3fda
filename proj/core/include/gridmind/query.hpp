#pragma once

#include <array>
#include <vector>

#include "gridmind/features.hpp"
#include "gridmind/network.hpp"

namespace gridmind {

// One queried feature with the A-threshold that was active when its
// interface neuron crossed, times the working-memory coefficient once
// make_predictions applies it.
struct PredictedFeature {
  Feature feature;
  double confidence;
};

// Query result for one move: the backward-fired interface neurons
// (location features or Failure) with their confidences. Mutual
// inhibition guarantees no exclusive pair and that Failure is a
// singleton.
struct QueryResult {
  std::vector<PredictedFeature> fired;  // ascending feature id
  NeuronSet fired_a;

  bool empty() const { return fired.empty(); }
  FeatureSet feature_set() const;
};

// The querying cascade: modulated forward pass into A-neurons with the
// threshold descending through combined-sum levels (capped at
// tnb_query_a, aborted once Failure fires), incremental backward
// accumulation into O/Failure and then L-neurons, with O/Failure mutual
// inhibition and feature exclusivity enforced. Queries are read-only.
QueryResult query(const NeuronSet& input_oa1, const NeuronSet& input_ma2,
                  const NetworkState& net);

struct Prediction {
  // per move, features with confidence = threshold * short-term-memory
  std::array<std::vector<PredictedFeature>, kMoveCount> per_move;

  FeatureSet features_for(Move m) const;
};

// Working-memory weight: 2 when every fired A-neuron learned at the
// previous step, approaching 1 as their last spikes age.
double short_term_memory_coef(const std::vector<int64_t>& last_spiked_a,
                              const NeuronSet& fired_a);

Prediction make_predictions(const NeuronSet& input_oa1,
                            const NetworkState& net);

enum class Mode : uint8_t { Exploration, Exploitation };
std::string to_string(Mode m);

struct MoveRating {
  // confidence keyed by move; the three parts partition the eight moves
  std::vector<std::pair<Move, double>> suitable;    // OK predicted
  std::vector<std::pair<Move, double>> unsuitable;  // KO or Failure predicted
  std::vector<Move> undecided;
};

MoveRating rate_predictions(const Prediction& pred);

// Exploration: an undecided move if any, else a least-confidence decided
// one. Exploitation: best suitable, else undecided, else least-bad
// unsuitable. Ties break uniformly at random.
Move make_a_choice(const MoveRating& rating, Mode mode, RngStream& rng);

struct ChoiceResult {
  Move move;
  Mode mode;
  Prediction prediction;
  FeatureSet predicted_features;  // for the chosen move
};

// Mode drawn uniformly, then predict -> rate -> choose.
ChoiceResult choose_a_move(const NeuronSet& input_oa1, const NetworkState& net,
                           RngStream& rng);

}  // namespace gridmind
