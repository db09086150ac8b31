#include "mapfkc/grid_map.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mapfkc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw std::runtime_error("map parse error at line " + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace

GridMap::GridMap(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (cell_size <= 0.0) {
    throw std::invalid_argument("cell_size must be positive");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, 0);
}

GridMap GridMap::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) parse_fail(line_no + 1, "unexpected end of file");
    ++line_no;
    return trim(line);
  };

  const std::string type_line = next_line();
  if (type_line.rfind("type", 0) != 0) parse_fail(line_no, "expected 'type ...' header");

  int height = -1;
  int width = -1;
  for (int i = 0; i < 2; ++i) {
    std::istringstream hdr(next_line());
    std::string key;
    int value = -1;
    if (!(hdr >> key >> value) || value <= 0) parse_fail(line_no, "expected 'height N' or 'width N'");
    if (key == "height") {
      height = value;
    } else if (key == "width") {
      width = value;
    } else {
      parse_fail(line_no, "unknown header key '" + key + "'");
    }
  }
  if (height <= 0 || width <= 0) parse_fail(line_no, "missing height or width");
  if (next_line() != "map") parse_fail(line_no, "expected 'map'");

  GridMap map(width, height);
  for (int y = 0; y < height; ++y) {
    const std::string row = next_line();
    if (static_cast<int>(row.size()) != width) {
      parse_fail(line_no, "row has " + std::to_string(row.size()) +
                              " cells, expected " + std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      const char g = row[x];
      if (g == '.') continue;
      if (g == '@' || g == 'T') {
        map.set_blocked({x, y});
      } else {
        parse_fail(line_no, std::string("unknown cell glyph '") + g + "'");
      }
    }
  }
  return map;
}

GridMap GridMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string GridMap::serialize() const {
  std::ostringstream out;
  out << "type octile\n";
  out << "height " << height_ << "\n";
  out << "width " << width_ << "\n";
  out << "map\n";
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out << (blocked({x, y}) ? '@' : '.');
    }
    out << '\n';
  }
  return out.str();
}

void GridMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write map file: " + path);
  out << serialize();
}

std::vector<std::pair<Cell, Heading>> GridMap::neighbors(Cell c) const {
  std::vector<std::pair<Cell, Heading>> result;
  result.reserve(4);
  for (Heading h : kAllHeadings) {
    const Cell n = step(c, h);
    if (free_cell(n)) result.emplace_back(n, h);
  }
  return result;
}

std::size_t GridMap::blocked_count() const {
  std::size_t n = 0;
  for (auto v : cells_) n += v;
  return n;
}

}  // namespace mapfkc
