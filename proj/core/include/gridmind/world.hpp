#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridmind/features.hpp"

namespace gridmind {

struct Coord {
  int x = 0;
  int y = 0;
  bool operator==(const Coord&) const = default;
  auto operator<=>(const Coord&) const = default;
};

std::string to_string(Coord c);

// Grid step offset of a motor activity.
Coord move_delta(Move m);

struct Box {
  Coord coord;
  FeatureSet features;  // location features only
  int room = 0;

  bool has_wall_toward(Move m) const;
};

struct WorldEvent {
  // Applied before the step whose index equals at_step, so the event is in
  // effect for that step's observation.
  int64_t at_step = 1;

  enum class Kind { OpenDoor, MoveFeature };
  Kind kind = Kind::OpenDoor;

  // OpenDoor: wall features to remove, one per listed box
  std::vector<std::pair<Coord, Feature>> removals;

  // MoveFeature: remove `feature` from every box in `from`, add to `to`
  Feature feature;
  std::vector<Coord> from;
  std::vector<Coord> to;
};

class WorldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WorldModel {
 public:
  WorldModel() = default;
  WorldModel(std::vector<Box> boxes, std::vector<WorldEvent> events);

  const Box& box_at(Coord c) const;  // throws WorldError on unknown coord
  const Box* find_box(Coord c) const;
  const std::map<Coord, Box>& boxes() const { return boxes_; }

  const std::vector<WorldEvent>& events() const { return events_; }
  size_t applied_events() const { return applied_; }
  void set_events(std::vector<WorldEvent> events);

  // Applies every not-yet-applied event with at_step <= current_step, in
  // order. Idempotent for a given step.
  void apply_events(int64_t current_step);

  struct MoveResult {
    Coord arrival;
    FeatureSet features;  // empty on failure
    bool failure = false;
  };

  // A move is blocked when the depart box has the wall feature for any
  // orthogonal component of the move (so diagonals cannot cut corners).
  // Blocked moves return the depart coord with failure set.
  MoveResult calculate_new_loc(Coord depart, Move move) const;

  // FNV-1a over the canonical serialized form; stable identity for
  // manifests and snapshot/world pairing.
  uint64_t checksum() const;
  std::string serialize() const;

 private:
  void validate() const;

  std::map<Coord, Box> boxes_;
  std::vector<WorldEvent> events_;
  size_t applied_ = 0;
};

// Parses the versioned world-description document (see docs in README and
// the grammar comment in world_parser.cpp). Errors carry line numbers.
WorldModel load_world(const std::string& config_text);

// 25-box named Room 1 at (-2,-2)..(2,2) and unnamed Room 2 at (3,-2)..(8,3),
// no events. Experiment presets attach door/sound events to it.
const std::string& default_world_text();

// Door between the rooms: east walls of (2,-1..1) and west walls of
// (3,-1..1).
WorldEvent door_open_event(int64_t at_step);
// Sound row of Room 2 moves from y=3 to y=-1.
WorldEvent sound_move_event(int64_t at_step);

}  // namespace gridmind
