#include "gridmind/world.hpp"

#include <algorithm>
#include <sstream>

namespace gridmind {

std::string to_string(Coord c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

Coord move_delta(Move m) {
  switch (m) {
    case Move::N:  return {0, 1};
    case Move::NE: return {1, 1};
    case Move::E:  return {1, 0};
    case Move::SE: return {1, -1};
    case Move::S:  return {0, -1};
    case Move::SW: return {-1, -1};
    case Move::W:  return {-1, 0};
    case Move::NW: return {-1, 1};
  }
  return {0, 0};
}

bool Box::has_wall_toward(Move m) const {
  const Coord d = move_delta(m);
  if (d.x > 0 && features.contains(Feature::EastWall)) return true;
  if (d.x < 0 && features.contains(Feature::WestWall)) return true;
  if (d.y > 0 && features.contains(Feature::NorthWall)) return true;
  if (d.y < 0 && features.contains(Feature::SouthWall)) return true;
  return false;
}

WorldModel::WorldModel(std::vector<Box> boxes, std::vector<WorldEvent> events) {
  for (const Box& b : boxes) {
    if (!boxes_.emplace(b.coord, b).second)
      throw WorldError("duplicate box at " + to_string(b.coord));
  }
  set_events(std::move(events));
}

void WorldModel::set_events(std::vector<WorldEvent> events) {
  events_ = std::move(events);
  std::stable_sort(events_.begin(), events_.end(),
                   [](const WorldEvent& a, const WorldEvent& b) {
                     return a.at_step < b.at_step;
                   });
  applied_ = 0;
  validate();
}

const Box& WorldModel::box_at(Coord c) const {
  auto it = boxes_.find(c);
  if (it == boxes_.end())
    throw WorldError("unknown box coord " + to_string(c));
  return it->second;
}

const Box* WorldModel::find_box(Coord c) const {
  auto it = boxes_.find(c);
  return it == boxes_.end() ? nullptr : &it->second;
}

namespace {

void apply_one(std::map<Coord, Box>& boxes, const WorldEvent& ev) {
  if (ev.kind == WorldEvent::Kind::OpenDoor) {
    for (const auto& [coord, wall] : ev.removals)
      boxes.at(coord).features.erase(wall);
  } else {
    for (Coord c : ev.from) boxes.at(c).features.erase(ev.feature);
    for (Coord c : ev.to) boxes.at(c).features.insert(ev.feature);
  }
}

void check_box_features(const Box& b) {
  const FeatureSet& fs = b.features;
  if (fs.contains(Feature::OK) && fs.contains(Feature::KO))
    throw WorldError("box " + to_string(b.coord) +
                     " violates OK/KO exclusion");
  int names = 0;
  for (int k = 0; k < Feature::kNameCount; ++k)
    if (fs.contains(Feature::name(k))) ++names;
  if (names > 1)
    throw WorldError("box " + to_string(b.coord) + " has " +
                     std::to_string(names) + " names (at most one allowed)");
  for (Feature f : fs.to_vector())
    if (!f.is_location())
      throw WorldError("box " + to_string(b.coord) +
                       " carries non-location feature " + f.to_string());
}

// The world must be closed: a missing orthogonal neighbor requires the
// matching wall feature, and a missing diagonal neighbor must be blocked
// by at least one component wall.
void check_closure(const std::map<Coord, Box>& boxes) {
  for (const auto& [c, b] : boxes) {
    for (Move m : kAllMoves) {
      if (b.has_wall_toward(m)) continue;
      const Coord d = move_delta(m);
      const Coord n{c.x + d.x, c.y + d.y};
      if (!boxes.contains(n))
        throw WorldError("world not closed: box " + to_string(c) +
                         " can leave the grid toward " + to_string(m));
    }
  }
}

}  // namespace

void WorldModel::validate() const {
  if (boxes_.empty()) throw WorldError("world has no boxes");
  for (const auto& [c, b] : boxes_) check_box_features(b);
  check_closure(boxes_);

  // events are validated by replaying them on a copy so that apply_events
  // itself never has to fail
  std::map<Coord, Box> scratch = boxes_;
  for (const WorldEvent& ev : events_) {
    if (ev.at_step < 1) throw WorldError("event at_step must be >= 1");
    if (ev.kind == WorldEvent::Kind::OpenDoor) {
      for (const auto& [coord, wall] : ev.removals) {
        if (!scratch.contains(coord))
          throw WorldError("event references unknown box " + to_string(coord));
        if (!wall.is_wall())
          throw WorldError("door event removes non-wall feature " +
                           wall.to_string());
      }
    } else {
      if (!ev.feature.is_location())
        throw WorldError("move event for non-location feature " +
                         ev.feature.to_string());
      for (Coord c : ev.from)
        if (!scratch.contains(c))
          throw WorldError("event references unknown box " + to_string(c));
      for (Coord c : ev.to)
        if (!scratch.contains(c))
          throw WorldError("event references unknown box " + to_string(c));
    }
    apply_one(scratch, ev);
    for (const auto& [c, b] : scratch) check_box_features(b);
    check_closure(scratch);
  }
}

void WorldModel::apply_events(int64_t current_step) {
  while (applied_ < events_.size() &&
         events_[applied_].at_step <= current_step) {
    apply_one(boxes_, events_[applied_]);
    ++applied_;
  }
}

WorldModel::MoveResult WorldModel::calculate_new_loc(Coord depart,
                                                     Move move) const {
  const Box& from = box_at(depart);
  if (from.has_wall_toward(move)) return {depart, {}, true};
  const Coord d = move_delta(move);
  const Coord to{depart.x + d.x, depart.y + d.y};
  const Box& target = box_at(to);  // closure guarantees existence
  return {to, target.features, false};
}

std::string WorldModel::serialize() const {
  std::ostringstream os;
  os << "gridworld 1\n";
  int minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool first = true;
  for (const auto& [c, b] : boxes_) {
    if (first) {
      minx = maxx = c.x;
      miny = maxy = c.y;
      first = false;
    }
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, c.y);
    maxy = std::max(maxy, c.y);
  }
  os << "[extent]\n"
     << "min " << minx << " " << miny << "\n"
     << "max " << maxx << " " << maxy << "\n";
  os << "[exclusions]\n"
     << "OK KO\n"
     << "#i #j for all distinct names\n"
     << "Failure *location\n";
  os << "[boxes]\n";
  for (const auto& [c, b] : boxes_) {
    os << c.x << " " << c.y << " room " << b.room << " :";
    for (Feature f : b.features.to_vector()) os << " " << f.to_string();
    os << "\n";
  }
  os << "[events]\n";
  for (const WorldEvent& ev : events_) {
    if (ev.kind == WorldEvent::Kind::OpenDoor) {
      os << "at " << ev.at_step << " door";
      for (const auto& [c, wall] : ev.removals)
        os << " " << c.x << " " << c.y << " " << wall.to_string();
    } else {
      os << "at " << ev.at_step << " move " << ev.feature.to_string()
         << " from";
      for (Coord c : ev.from) os << " " << c.x << " " << c.y;
      os << " to";
      for (Coord c : ev.to) os << " " << c.x << " " << c.y;
    }
    os << "\n";
  }
  return os.str();
}

uint64_t WorldModel::checksum() const {
  const std::string text = serialize();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

WorldEvent door_open_event(int64_t at_step) {
  WorldEvent ev;
  ev.at_step = at_step;
  ev.kind = WorldEvent::Kind::OpenDoor;
  for (int y = -1; y <= 1; ++y) {
    ev.removals.push_back({{2, y}, Feature::EastWall});
    ev.removals.push_back({{3, y}, Feature::WestWall});
  }
  return ev;
}

WorldEvent sound_move_event(int64_t at_step) {
  WorldEvent ev;
  ev.at_step = at_step;
  ev.kind = WorldEvent::Kind::MoveFeature;
  ev.feature = Feature::Sound;
  for (int x = 3; x <= 8; ++x) {
    ev.from.push_back({x, 3});
    ev.to.push_back({x, -1});
  }
  return ev;
}

}  // namespace gridmind
