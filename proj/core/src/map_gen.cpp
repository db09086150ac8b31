#include "mapfkc/map_gen.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace mapfkc {

namespace {

// Splits `leftover` cells across `slots` gaps (margins + inter-block gaps),
// spreading the remainder outside-in so layouts stay near-symmetric.
std::vector<int> spread_gaps(int leftover, int slots) {
  std::vector<int> gaps(slots, leftover / slots);
  int extra = leftover % slots;
  int lo = 0, hi = slots - 1;
  while (extra > 0) {
    gaps[lo] += 1;
    --extra;
    if (extra > 0 && hi != lo) {
      gaps[hi] += 1;
      --extra;
    }
    ++lo;
    --hi;
  }
  return gaps;
}

std::vector<int> fixed_gaps(int leftover, int slots, int inter_gap) {
  // slots = margins (2) + inter-block gaps (slots - 2).
  const int inter_total = inter_gap * (slots - 2);
  const int margin_total = leftover - inter_total;
  if (margin_total < 2) {
    throw std::runtime_error("requested block spacing does not fit the map size");
  }
  std::vector<int> gaps(slots, inter_gap);
  gaps.front() = margin_total / 2 + margin_total % 2;
  gaps.back() = margin_total / 2;
  return gaps;
}

std::vector<int> block_offsets(int total, int blocks, int block_extent, int gap,
                               const char* axis) {
  const int occupied = blocks * block_extent;
  const int leftover = total - occupied;
  if (leftover < blocks + 1) {
    throw std::runtime_error(std::string("obstacle blocks do not fit along ") + axis);
  }
  const std::vector<int> gaps = (gap < 0) ? spread_gaps(leftover, blocks + 1)
                                          : fixed_gaps(leftover, blocks + 1, gap);
  std::vector<int> offsets;
  offsets.reserve(blocks);
  int pos = 0;
  for (int b = 0; b < blocks; ++b) {
    pos += gaps[b];
    offsets.push_back(pos);
    pos += block_extent;
  }
  return offsets;
}

}  // namespace

std::optional<WarehousePreset> preset_by_name(const std::string& name) {
  if (name == "map1") return WarehousePreset{"map1", 24, 46, 5, 5, 2, 5};
  if (name == "map2") return WarehousePreset{"map2", 46, 142, 10, 10, 2, 10};
  if (name == "map3") return WarehousePreset{"map3", 66, 352, 15, 15, 2, 20};
  return std::nullopt;
}

GridMap generate_warehouse_map(const WarehousePreset& preset, int row_gap, int col_gap) {
  GridMap map(preset.width, preset.height);
  const auto row_offsets =
      block_offsets(preset.height, preset.block_rows, preset.block_h, row_gap, "rows");
  const auto col_offsets =
      block_offsets(preset.width, preset.block_cols, preset.block_w, col_gap, "columns");
  for (int ry : row_offsets) {
    for (int cx : col_offsets) {
      for (int dy = 0; dy < preset.block_h; ++dy) {
        for (int dx = 0; dx < preset.block_w; ++dx) {
          map.set_blocked({cx + dx, ry + dy});
        }
      }
    }
  }
  return map;
}

}  // namespace mapfkc
