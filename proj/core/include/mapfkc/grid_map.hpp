#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mapfkc/geometry.hpp"

namespace mapfkc {

// Static 4-connected grid with blocked cells. Immutable after construction;
// safe to share across concurrent solver runs.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, double cell_size = 1.0);

  // Parses MovingAI-style map text: `type octile`, `height H`, `width W`,
  // `map`, then H rows of W glyphs ('.' free, '@'/'T' blocked).
  // Throws std::runtime_error naming the offending line on malformed input.
  static GridMap parse(const std::string& text);
  static GridMap load(const std::string& path);

  std::string serialize() const;
  void save(const std::string& path) const;

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool blocked(Cell c) const { return cells_[index(c)] != 0; }
  bool free_cell(Cell c) const { return in_bounds(c) && !blocked(c); }

  void set_blocked(Cell c, bool value = true) { cells_[index(c)] = value ? 1 : 0; }

  // In-bounds unblocked orthogonal neighbors with the heading pointing from
  // `c` to the neighbor, in deterministic N,E,S,W order.
  std::vector<std::pair<Cell, Heading>> neighbors(Cell c) const;

  std::size_t blocked_count() const;
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 1.0;
  std::vector<std::uint8_t> cells_;  // row-major, 1 = blocked
};

}  // namespace mapfkc
