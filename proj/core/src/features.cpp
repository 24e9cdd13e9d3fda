#include "gridmind/features.hpp"

#include <array>

namespace gridmind {

namespace {

const char* kBaseNames[] = {"OK",       "KO",   "NorthWall", "EastWall",
                            "SouthWall", "WestWall", "Cold", "Sound"};
const char* kMotorNames[] = {"N",  "NE", "E",  "SE",  "S",
                             "SW", "W",  "NW", "Diag", "Orth"};

}  // namespace

std::string Feature::to_string() const {
  if (id_ < kFirstName) return kBaseNames[id_];
  if (is_name()) return "#" + std::to_string(id_ - kFirstName);
  if (is_motor()) return kMotorNames[id_ - kFirstMotor];
  return "Failure";
}

std::optional<Feature> Feature::parse(const std::string& token) {
  for (int i = 0; i < kFirstName; ++i)
    if (token == kBaseNames[i]) return Feature(i);
  for (int i = 0; i < kMotorCount; ++i)
    if (token == kMotorNames[i]) return Feature(kFirstMotor + i);
  if (token == "Failure") return Failure;
  if (token.size() >= 2 && token[0] == '#') {
    int k = 0;
    for (size_t i = 1; i < token.size(); ++i) {
      if (token[i] < '0' || token[i] > '9') return std::nullopt;
      k = k * 10 + (token[i] - '0');
    }
    if (k < kNameCount) return name(k);
  }
  return std::nullopt;
}

bool mutually_exclusive(Feature a, Feature b) {
  if (a == b) return false;
  if ((a == Feature::OK && b == Feature::KO) ||
      (a == Feature::KO && b == Feature::OK))
    return true;
  if (a.is_name() && b.is_name()) return true;
  if (a.is_failure() && b.is_location()) return true;
  if (b.is_failure() && a.is_location()) return true;
  return false;
}

const std::vector<int>& exclusive_location_indices(int l) {
  static const auto table = [] {
    std::array<std::vector<int>, Feature::kLocationCount> t;
    for (int a = 0; a < Feature::kLocationCount; ++a)
      for (int b = 0; b < Feature::kLocationCount; ++b)
        if (mutually_exclusive(Feature(a), Feature(b))) t[a].push_back(b);
    return t;
  }();
  return table[l];
}

std::vector<Feature> FeatureSet::to_vector() const {
  std::vector<Feature> out;
  uint64_t bits = bits_;
  while (bits) {
    int id = __builtin_ctzll(bits);
    out.push_back(Feature(id));
    bits &= bits - 1;
  }
  return out;
}

std::string to_string(Move m) { return kMotorNames[static_cast<int>(m)]; }

std::optional<Move> parse_move(const std::string& token) {
  for (int i = 0; i < kMoveCount; ++i)
    if (token == kMotorNames[i]) return static_cast<Move>(i);
  return std::nullopt;
}

bool is_diagonal(Move m) {
  switch (m) {
    case Move::NE:
    case Move::SE:
    case Move::SW:
    case Move::NW:
      return true;
    default:
      return false;
  }
}

FeatureSet motor_features(Move m) {
  FeatureSet fs;
  fs.insert(Feature(Feature::kFirstMotor + static_cast<int>(m)));
  fs.insert(is_diagonal(m) ? Feature::Diag : Feature::Orth);
  return fs;
}

}  // namespace gridmind
