#include <sstream>
#include <vector>

#include "gridmind/world.hpp"

namespace gridmind {

// World-description document, line oriented. Grammar:
//
//   gridworld 1
//   [extent]
//   min <x> <y>
//   max <x> <y>
//   [exclusions]            # documentation of the fixed relation
//   <feature> <feature>
//   [boxes]
//   <x> <y> room <id> : <feature> ...
//   [events]
//   at <step> door <x> <y> <WallFeature> ...
//   at <step> move <feature> from <x> <y> ... to <x> <y> ...
//
// '#' starts a comment; blank lines are ignored. The [extent] and
// [exclusions] sections are optional; boxes outside a declared extent are
// rejected. [exclusions] pairs are checked against the fixed relation.

namespace {

struct ParseCtx {
  int line_no = 0;
  [[noreturn]] void fail(const std::string& msg) const {
    throw WorldError("line " + std::to_string(line_no) + ": " + msg);
  }
};

// '#' introduces box names, so comments are whole lines only: a line
// whose first non-blank character is '#'.
bool is_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string::npos && line[pos] == '#';
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const ParseCtx& ctx, const std::string& tok) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) ctx.fail("bad integer '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    ctx.fail("bad integer '" + tok + "'");
  }
}

Feature parse_feature(const ParseCtx& ctx, const std::string& tok) {
  auto f = Feature::parse(tok);
  if (!f) ctx.fail("unknown feature '" + tok + "'");
  return *f;
}

}  // namespace

WorldModel load_world(const std::string& config_text) {
  std::istringstream input(config_text);
  std::string line;
  ParseCtx ctx;

  enum class Section { None, Extent, Exclusions, Boxes, Events };
  Section section = Section::None;
  bool saw_header = false;
  bool have_min = false, have_max = false;
  Coord ext_min{}, ext_max{};
  std::vector<Box> boxes;
  std::vector<WorldEvent> events;

  while (std::getline(input, line)) {
    ++ctx.line_no;
    if (is_comment(line)) continue;
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (!saw_header) {
      if (toks.size() != 2 || toks[0] != "gridworld")
        ctx.fail("expected header 'gridworld <version>'");
      if (toks[1] != "1") ctx.fail("unsupported version '" + toks[1] + "'");
      saw_header = true;
      continue;
    }

    if (toks[0][0] == '[') {
      const std::string& s = toks[0];
      if (s == "[extent]") section = Section::Extent;
      else if (s == "[exclusions]") section = Section::Exclusions;
      else if (s == "[boxes]") section = Section::Boxes;
      else if (s == "[events]") section = Section::Events;
      else ctx.fail("unknown section " + s);
      continue;
    }

    switch (section) {
      case Section::None:
        ctx.fail("content before any section");
      case Section::Extent: {
        if (toks.size() != 3 || (toks[0] != "min" && toks[0] != "max"))
          ctx.fail("extent lines are 'min <x> <y>' or 'max <x> <y>'");
        Coord c{parse_int(ctx, toks[1]), parse_int(ctx, toks[2])};
        if (toks[0] == "min") { ext_min = c; have_min = true; }
        else { ext_max = c; have_max = true; }
        break;
      }
      case Section::Exclusions: {
        // documentation section; verify listed pairs when they parse as
        // concrete features
        if (toks.size() == 2) {
          auto a = Feature::parse(toks[0]);
          auto b = Feature::parse(toks[1]);
          if (a && b && !mutually_exclusive(*a, *b))
            ctx.fail("pair " + toks[0] + " " + toks[1] +
                     " is not mutually exclusive");
        }
        break;
      }
      case Section::Boxes: {
        if (toks.size() < 5 || toks[2] != "room" || toks[4] != ":")
          ctx.fail("box lines are '<x> <y> room <id> : <features...>'");
        Box b;
        b.coord = {parse_int(ctx, toks[0]), parse_int(ctx, toks[1])};
        b.room = parse_int(ctx, toks[3]);
        for (size_t i = 5; i < toks.size(); ++i) {
          Feature f = parse_feature(ctx, toks[i]);
          if (!f.is_location())
            ctx.fail("feature " + toks[i] + " is not a location feature");
          if (f == Feature::OK && b.features.contains(Feature::KO))
            ctx.fail("box " + to_string(b.coord) + " violates OK/KO exclusion");
          if (f == Feature::KO && b.features.contains(Feature::OK))
            ctx.fail("box " + to_string(b.coord) + " violates OK/KO exclusion");
          b.features.insert(f);
        }
        if (have_min && have_max &&
            (b.coord.x < ext_min.x || b.coord.x > ext_max.x ||
             b.coord.y < ext_min.y || b.coord.y > ext_max.y))
          ctx.fail("box " + to_string(b.coord) + " outside declared extent");
        boxes.push_back(b);
        break;
      }
      case Section::Events: {
        if (toks.size() < 3 || toks[0] != "at")
          ctx.fail("event lines start with 'at <step>'");
        WorldEvent ev;
        ev.at_step = parse_int(ctx, toks[1]);
        if (ev.at_step < 1) ctx.fail("event step must be >= 1");
        if (toks[2] == "door") {
          ev.kind = WorldEvent::Kind::OpenDoor;
          if ((toks.size() - 3) % 3 != 0 || toks.size() == 3)
            ctx.fail("door events list '<x> <y> <WallFeature>' triples");
          for (size_t i = 3; i + 3 <= toks.size(); i += 3) {
            Coord c{parse_int(ctx, toks[i]), parse_int(ctx, toks[i + 1])};
            Feature f = parse_feature(ctx, toks[i + 2]);
            if (!f.is_wall())
              ctx.fail("door event removes non-wall feature " + toks[i + 2]);
            ev.removals.push_back({c, f});
          }
        } else if (toks[2] == "move") {
          ev.kind = WorldEvent::Kind::MoveFeature;
          if (toks.size() < 5) ctx.fail("malformed move event");
          ev.feature = parse_feature(ctx, toks[3]);
          size_t i = 4;
          if (toks[i] != "from") ctx.fail("expected 'from'");
          ++i;
          while (i + 1 < toks.size() && toks[i] != "to") {
            ev.from.push_back(
                {parse_int(ctx, toks[i]), parse_int(ctx, toks[i + 1])});
            i += 2;
          }
          if (i >= toks.size() || toks[i] != "to") ctx.fail("expected 'to'");
          ++i;
          while (i + 1 < toks.size()) {
            ev.to.push_back(
                {parse_int(ctx, toks[i]), parse_int(ctx, toks[i + 1])});
            i += 2;
          }
          if (i != toks.size()) ctx.fail("dangling token in move event");
          if (ev.from.empty() || ev.to.empty())
            ctx.fail("move event needs from and to coords");
        } else {
          ctx.fail("unknown event kind '" + toks[2] + "'");
        }
        events.push_back(std::move(ev));
        break;
      }
    }
  }

  if (!saw_header) throw WorldError("empty document (missing header)");
  try {
    return WorldModel(std::move(boxes), std::move(events));
  } catch (const WorldError&) {
    throw;  // already carries the offending coord/feature
  }
}

const std::string& default_world_text() {
  static const std::string text = [] {
    std::ostringstream os;
    os << "gridworld 1\n";
    os << "[extent]\nmin -2 -2\nmax 8 3\n";
    os << "[exclusions]\nOK KO\n";
    os << "[boxes]\n";
    auto emit = [&os](int x, int y, int room, int xmin, int xmax, int ymin,
                      int ymax, bool named) {
      os << x << " " << y << " room " << room << " :";
      os << ((((x - y) % 2) == 0) ? " OK" : " KO");
      if (y == ymax) os << " NorthWall";
      if (x == xmax) os << " EastWall";
      if (y == ymin) os << " SouthWall";
      if (x == xmin) os << " WestWall";
      if (room == 1 && x == xmin) os << " Cold";
      if (room == 2 && y == 3) os << " Sound";
      if (named) os << " #" << (x + 2) * 5 + (y + 2);
      os << "\n";
    };
    for (int x = -2; x <= 2; ++x)
      for (int y = -2; y <= 2; ++y) emit(x, y, 1, -2, 2, -2, 2, true);
    for (int x = 3; x <= 8; ++x)
      for (int y = -2; y <= 3; ++y) emit(x, y, 2, 3, 8, -2, 3, false);
    os << "[events]\n";
    return os.str();
  }();
  return text;
}

}  // namespace gridmind
