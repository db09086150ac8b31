#pragma once

#include <optional>
#include <string>

#include "mapfkc/grid_map.hpp"

namespace mapfkc {

// Warehouse-style map layout: a regular grid of rectangular obstacle blocks.
struct WarehousePreset {
  std::string name;
  int height = 0;
  int width = 0;
  int block_rows = 0;  // blocks per column
  int block_cols = 0;  // blocks per row
  int block_h = 0;     // obstacle block height in cells
  int block_w = 0;     // obstacle block width in cells
};

// map1: 24x46, 5x5 blocks of 2x5; map2: 46x142, 10x10 blocks of 2x10;
// map3: 66x352, 15x15 blocks of 2x20.
std::optional<WarehousePreset> preset_by_name(const std::string& name);

// Lays the preset's blocks out on the grid. Gaps between blocks default to
// an even distribution of the leftover cells (margins included); pass
// row_gap/col_gap >= 0 to pin the inter-block spacing, with margins taking
// the remainder. Throws std::runtime_error when the blocks cannot tile the
// requested size.
GridMap generate_warehouse_map(const WarehousePreset& preset, int row_gap = -1,
                               int col_gap = -1);

}  // namespace mapfkc
