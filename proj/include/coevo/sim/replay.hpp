#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "coevo/errors.hpp"
#include "coevo/rng.hpp"
#include "coevo/sim/skirmish.hpp"

namespace coevo::sim {

// One frame per line:
//   <frame> | <id> <x> <y> <hp> ; <id> <x> <y> <hp> ; ... | <attacker>><target> ...
// Coordinates use 17 significant digits so parsing restores them exactly.
inline std::string format_frame(const FrameSnapshot& f) {
  std::string line = std::to_string(f.frame) + " |";
  char buf[96];
  for (std::size_t i = 0; i < f.units.size(); ++i) {
    const UnitSnapshot& u = f.units[i];
    std::snprintf(buf, sizeof buf, "%s %d %.17g %.17g %d", i == 0 ? "" : " ;", u.id, u.x, u.y, u.hitpoints);
    line += buf;
  }
  line += " |";
  for (const ShotEvent& s : f.shots) line += " " + std::to_string(s.attacker) + ">" + std::to_string(s.target);
  return line;
}

inline FrameSnapshot parse_frame(const std::string& line) {
  const auto bar1 = line.find('|');
  const auto bar2 = line.find('|', bar1 == std::string::npos ? 0 : bar1 + 1);
  if (bar1 == std::string::npos || bar2 == std::string::npos) throw ConfigError("malformed trace line: " + line);

  FrameSnapshot f;
  f.frame = std::stoi(line.substr(0, bar1));

  std::istringstream units(line.substr(bar1 + 1, bar2 - bar1 - 1));
  std::string rec;
  while (std::getline(units, rec, ';')) {
    std::istringstream in(rec);
    UnitSnapshot u;
    std::string x, y;
    if (!(in >> u.id >> x >> y >> u.hitpoints)) continue;
    u.x = std::strtod(x.c_str(), nullptr);
    u.y = std::strtod(y.c_str(), nullptr);
    f.units.push_back(u);
  }

  std::istringstream shots(line.substr(bar2 + 1));
  std::string tok;
  while (shots >> tok) {
    const auto gt = tok.find('>');
    if (gt == std::string::npos) throw ConfigError("malformed shot event: " + tok);
    f.shots.push_back({std::stoi(tok.substr(0, gt)), std::stoi(tok.substr(gt + 1))});
  }
  return f;
}

inline void write_trace(std::ostream& out, const ReplayTrace& t) {
  for (const FrameSnapshot& f : t.frames) out << format_frame(f) << '\n';
}

inline ReplayTrace read_trace(std::istream& in) {
  ReplayTrace t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    FrameSnapshot f = parse_frame(line);
    if (!t.frames.empty() && f.frame <= t.frames.back().frame) {
      throw ConfigError("trace frame indices must be strictly increasing");
    }
    t.frames.push_back(std::move(f));
  }
  return t;
}

inline std::uint64_t trace_hash(const ReplayTrace& t) {
  std::uint64_t h = fnv1a64("");
  for (const FrameSnapshot& f : t.frames) h = fnv1a64(format_frame(f) + "\n", h);
  return h;
}

}  // namespace coevo::sim
