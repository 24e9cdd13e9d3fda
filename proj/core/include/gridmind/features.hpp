#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridmind {

// Fixed catalog of perceivable features. Location features map 1:1 onto
// L-neurons (ids 0..32), motor features onto M-neurons (ids 33..42), and
// the failure detector is the single F-neuron (id 43).
class Feature {
 public:
  static constexpr int kLocationCount = 33;  // OK..Sound plus 25 box names
  static constexpr int kMotorCount = 10;
  static constexpr int kNameCount = 25;
  static constexpr int kTotal = kLocationCount + kMotorCount + 1;

  static constexpr int kFirstName = 8;        // id of "#0"
  static constexpr int kFirstMotor = kLocationCount;
  static constexpr int kFailureId = kLocationCount + kMotorCount;

  constexpr Feature() : id_(0) {}
  constexpr explicit Feature(int id) : id_(static_cast<uint8_t>(id)) {}

  static const Feature OK, KO, NorthWall, EastWall, SouthWall, WestWall,
      Cold, Sound;
  static const Feature N, NE, E, SE, S, SW, W, NW, Diag, Orth;
  static const Feature Failure;

  // box name "#k", k in 0..24
  static constexpr Feature name(int k) { return Feature(kFirstName + k); }

  constexpr int id() const { return id_; }
  constexpr bool is_location() const { return id_ < kLocationCount; }
  constexpr bool is_motor() const {
    return id_ >= kFirstMotor && id_ < kFailureId;
  }
  constexpr bool is_failure() const { return id_ == kFailureId; }
  constexpr bool is_name() const {
    return id_ >= kFirstName && id_ < kFirstName + kNameCount;
  }
  constexpr bool is_wall() const { return id_ >= 2 && id_ <= 5; }

  // index of the corresponding L-neuron (valid for location features)
  constexpr int location_index() const { return id_; }
  // index of the corresponding M-neuron (valid for motor features)
  constexpr int motor_index() const { return id_ - kFirstMotor; }

  constexpr bool operator==(const Feature&) const = default;
  constexpr auto operator<=>(const Feature&) const = default;

  std::string to_string() const;
  static std::optional<Feature> parse(const std::string& token);

 private:
  uint8_t id_;
};

inline constexpr Feature Feature::OK{0}, Feature::KO{1}, Feature::NorthWall{2},
    Feature::EastWall{3}, Feature::SouthWall{4}, Feature::WestWall{5},
    Feature::Cold{6}, Feature::Sound{7};
inline constexpr Feature Feature::N{33}, Feature::NE{34}, Feature::E{35},
    Feature::SE{36}, Feature::S{37}, Feature::SW{38}, Feature::W{39},
    Feature::NW{40}, Feature::Diag{41}, Feature::Orth{42};
inline constexpr Feature Feature::Failure{43};

// OK excludes KO, distinct names exclude each other, and Failure excludes
// every location feature. The relation is symmetric.
bool mutually_exclusive(Feature a, Feature b);

// L-neuron indices inhibited when L-neuron `l` fires (excludes l itself).
const std::vector<int>& exclusive_location_indices(int l);

// Bitmask over the full feature catalog (fits in 64 bits).
class FeatureSet {
 public:
  constexpr FeatureSet() = default;
  constexpr FeatureSet(std::initializer_list<Feature> fs) {
    for (Feature f : fs) insert(f);
  }

  constexpr void insert(Feature f) { bits_ |= (uint64_t{1} << f.id()); }
  constexpr void erase(Feature f) { bits_ &= ~(uint64_t{1} << f.id()); }
  constexpr bool contains(Feature f) const {
    return (bits_ >> f.id()) & uint64_t{1};
  }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcountll(bits_); }

  constexpr bool is_subset_of(FeatureSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr FeatureSet set_union(FeatureSet o) const {
    return FeatureSet(bits_ | o.bits_);
  }
  constexpr FeatureSet set_minus(FeatureSet o) const {
    return FeatureSet(bits_ & ~o.bits_);
  }
  constexpr FeatureSet set_intersect(FeatureSet o) const {
    return FeatureSet(bits_ & o.bits_);
  }

  std::vector<Feature> to_vector() const;  // ascending id order
  constexpr uint64_t bits() const { return bits_; }

  constexpr bool operator==(const FeatureSet&) const = default;

 private:
  constexpr explicit FeatureSet(uint64_t bits) : bits_(bits) {}
  uint64_t bits_ = 0;
};

// The eight motor activities, in the fixed order used everywhere
// (prediction loops, CSV columns, RNG tie-breaking).
enum class Move : uint8_t { N, NE, E, SE, S, SW, W, NW };
inline constexpr int kMoveCount = 8;
inline constexpr Move kAllMoves[] = {Move::N,  Move::NE, Move::E, Move::SE,
                                     Move::S,  Move::SW, Move::W, Move::NW};

std::string to_string(Move m);
std::optional<Move> parse_move(const std::string& token);

bool is_diagonal(Move m);

// The two proprioceptive features of a motor activity: the specific
// direction plus Diag or Orth.
FeatureSet motor_features(Move m);

}  // namespace gridmind
