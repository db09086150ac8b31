#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace mapfkc {

// Grid coordinates: x = column, y = row, origin at the top-left corner.
struct Cell {
  int x = 0;
  int y = 0;

  bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
  bool operator<(const Cell& o) const { return y != o.y ? y < o.y : x < o.x; }
};

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
        static_cast<std::uint32_t>(c.y));
  }
};

// The four grid-aligned orientations. Headings map to (dx,dy) as
// N=(0,-1), E=(+1,0), S=(0,+1), W=(-1,0).
enum class Heading : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Heading, 4> kAllHeadings = {
    Heading::North, Heading::East, Heading::South, Heading::West};

inline Cell heading_delta(Heading h) {
  switch (h) {
    case Heading::North: return {0, -1};
    case Heading::East: return {1, 0};
    case Heading::South: return {0, 1};
    case Heading::West: return {-1, 0};
  }
  return {0, 0};
}

inline Cell step(Cell c, Heading h) {
  const Cell d = heading_delta(h);
  return {c.x + d.x, c.y + d.y};
}

// Number of 90-degree turns between two headings: 0, 1 or 2.
inline int quarter_turns(Heading a, Heading b) {
  const int diff = (4 + static_cast<int>(b) - static_cast<int>(a)) % 4;
  return diff == 3 ? 1 : diff;
}

inline bool opposite(Heading a, Heading b) { return quarter_turns(a, b) == 2; }

// Heading pointing from `from` to an orthogonally adjacent `to`.
inline std::optional<Heading> heading_between(Cell from, Cell to) {
  for (Heading h : kAllHeadings) {
    if (step(from, h) == to) return h;
  }
  return std::nullopt;
}

inline char heading_letter(Heading h) {
  switch (h) {
    case Heading::North: return 'N';
    case Heading::East: return 'E';
    case Heading::South: return 'S';
    case Heading::West: return 'W';
  }
  return '?';
}

inline std::optional<Heading> heading_from_letter(char c) {
  switch (c) {
    case 'N': return Heading::North;
    case 'E': return Heading::East;
    case 'S': return Heading::South;
    case 'W': return Heading::West;
    default: return std::nullopt;
  }
}

inline std::string to_string(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace mapfkc
