#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anyangle/geometry.hpp"
#include "anyangle/random.hpp"

namespace anyangle {

/// Integer index of a unit obstacle cell [x, x+1] x [y, y+1].
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Malformed map text. line() is 1-based; 0 when no single line is at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file that could not be opened, read or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// W x H occupancy grid. Search nodes are the (W+1) x (H+1) lattice corner points.
class GridMap {
 public:
  GridMap() = default;

  GridMap(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("GridMap: dimensions must be positive");
    occupied_.assign(static_cast<std::size_t>(width) * height, 0);
  }

  GridMap(int width, int height, std::span<const Cell> occupied) : GridMap(width, height) {
    for (const Cell& c : occupied) {
      if (!in_bounds(c.x, c.y)) throw std::out_of_range("GridMap: occupied cell out of bounds");
      set(c, true);
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int cx, int cy) const { return cx >= 0 && cy >= 0 && cx < width_ && cy < height_; }

  /// Out-of-bounds cells report free.
  bool occupied(int cx, int cy) const {
    return in_bounds(cx, cy) && occupied_[static_cast<std::size_t>(cy) * width_ + cx] != 0;
  }
  bool occupied(const Cell& c) const { return occupied(c.x, c.y); }

  void set(const Cell& c, bool value) {
    if (!in_bounds(c.x, c.y)) throw std::out_of_range("GridMap::set: cell out of bounds");
    auto& slot = occupied_[static_cast<std::size_t>(c.y) * width_ + c.x];
    count_ += static_cast<std::size_t>(value) - static_cast<std::size_t>(slot);
    slot = value ? 1 : 0;
  }

  std::size_t occupied_count() const { return count_; }

  /// Row-major cell index; also the obstacle index used by vertex tables.
  int cell_index(int cx, int cy) const { return cy * width_ + cx; }

  /// Occupied cells sorted by (x, y).
  std::vector<Cell> occupied_cells() const {
    std::vector<Cell> cells;
    cells.reserve(count_);
    for (int x = 0; x < width_; ++x) {
      for (int y = 0; y < height_; ++y) {
        if (occupied(x, y)) cells.push_back({x, y});
      }
    }
    return cells;
  }

  bool contains_lattice_point(const Point& p) const {
    return p.x >= 0 && p.y >= 0 && p.x <= width_ && p.y <= height_;
  }

  /// Dense id of a lattice point, in [0, lattice_size()).
  std::size_t lattice_index(const Point& p) const {
    return static_cast<std::size_t>(p.y) * (width_ + 1) + static_cast<std::size_t>(p.x);
  }
  Point lattice_point(std::size_t index) const {
    const auto stride = static_cast<std::size_t>(width_ + 1);
    return {static_cast<double>(index % stride), static_cast<double>(index / stride)};
  }
  std::size_t lattice_size() const {
    return static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_ + 1);
  }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> occupied_;
};

struct Query {
  Point start;
  Point target;
};

/// A query is valid when both ends are integer lattice points inside the map.
/// Lattice points can never lie strictly inside a cell, so obstacle contact is allowed.
inline void validate_query(const Query& q, const GridMap& map) {
  for (const Point& p : {q.start, q.target}) {
    if (!is_integral(p.x) || !is_integral(p.y) || !map.contains_lattice_point(p)) {
      throw std::invalid_argument("query endpoint is not a lattice point of the map");
    }
  }
}

/// Bottom-left to top-right query: (0,0) to (W-1, H-1), so a 50x50 map spans 49 units per
/// axis like a grid of 50 x 50 nodes.
inline Query corner_query(const GridMap& map) {
  return {{0.0, 0.0}, {static_cast<double>(map.width() - 1), static_cast<double>(map.height() - 1)}};
}

inline std::size_t target_cell_count(int width, int height, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("obstacle fraction must lie in [0, 1]");
  }
  return static_cast<std::size_t>(std::llround(fraction * width * height));
}

/// Uniform sample of exactly round(fraction * W * H) distinct cells (partial Fisher-Yates).
inline GridMap generate_random(int width, int height, double fraction, std::uint64_t seed) {
  GridMap map(width, height);
  const std::size_t n = target_cell_count(width, height, fraction);
  std::vector<int> order(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.below(order.size() - i);
    std::swap(order[i], order[j]);
    map.set({order[i] % width, order[i] / width}, true);
  }
  return map;
}

/// Grows cluster_count separated blobs by seeded accretion of random rectangles.
/// Blobs never touch each other (not even diagonally), so each stays its own cluster
/// unless growth stalls and cells have to be spent elsewhere.
inline GridMap generate_clustered(int width, int height, double fraction, int cluster_count,
                                  std::uint64_t seed) {
  if (cluster_count < 1) throw std::invalid_argument("cluster_count must be >= 1");
  const std::size_t total = target_cell_count(width, height, fraction);
  if (static_cast<std::size_t>(cluster_count) > total) {
    throw GenerationError("cannot place " + std::to_string(cluster_count) + " clusters with " +
                          std::to_string(total) + " obstacle cells");
  }
  GridMap map(width, height);
  if (total == 0) return map;

  Rng rng(seed);
  const auto k = static_cast<std::size_t>(cluster_count);

  // Random budget split, each cluster at least one cell.
  std::vector<double> weights(k);
  double weight_sum = 0.0;
  for (double& wt : weights) {
    wt = 0.5 + rng.unit();
    weight_sum += wt;
  }
  std::vector<std::size_t> budget(k, 1);
  std::size_t assigned = k;
  for (std::size_t i = 0; i < k; ++i) {
    const auto extra = static_cast<std::size_t>(std::floor((total - k) * weights[i] / weight_sum));
    budget[i] += extra;
    assigned += extra;
  }
  for (std::size_t i = 0; assigned < total; i = (i + 1) % k, ++assigned) ++budget[i];

  std::vector<int> owner(static_cast<std::size_t>(width) * height, -1);
  auto owner_at = [&](int x, int y) {
    return map.in_bounds(x, y) ? owner[static_cast<std::size_t>(y) * width + x] : -1;
  };
  auto can_take = [&](int x, int y, int id) {
    if (!map.in_bounds(x, y) || owner_at(x, y) != -1) return false;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int o = owner_at(x + dx, y + dy);
        if (o != -1 && o != id) return false;
      }
    }
    return true;
  };
  auto take = [&](int x, int y, int id, std::vector<Cell>& blob) {
    owner[static_cast<std::size_t>(y) * width + x] = id;
    map.set({x, y}, true);
    blob.push_back({x, y});
  };

  constexpr int kAttempts = 4000;
  std::size_t carry = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const int id = static_cast<int>(i);
    const std::size_t want = budget[i] + carry;
    carry = 0;
    std::vector<Cell> blob;

    for (int attempt = 0; attempt < kAttempts && blob.empty(); ++attempt) {
      const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
      const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(height)));
      if (can_take(x, y, id)) take(x, y, id, blob);
    }
    if (blob.empty()) throw GenerationError("no room left to seed cluster " + std::to_string(i));

    const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(want)))));
    int stalls = 0;
    while (blob.size() < want && stalls < kAttempts) {
      const Cell anchor = blob[rng.below(blob.size())];
      const int rw = static_cast<int>(rng.between(std::max(1, side / 3), side));
      const int rh = static_cast<int>(rng.between(std::max(1, side / 3), side));
      const int x0 = anchor.x - static_cast<int>(rng.below(static_cast<std::uint64_t>(rw)));
      const int y0 = anchor.y - static_cast<int>(rng.below(static_cast<std::uint64_t>(rh)));
      // Breadth-first fill of the rectangle from the anchor keeps the blob connected.
      const std::size_t before = blob.size();
      std::queue<Cell> frontier;
      std::vector<std::uint8_t> seen(static_cast<std::size_t>(rw) * rh, 0);
      auto local = [&](const Cell& c) { return static_cast<std::size_t>(c.y - y0) * rw + (c.x - x0); };
      frontier.push(anchor);
      seen[local(anchor)] = 1;
      while (!frontier.empty() && blob.size() < want) {
        const Cell c = frontier.front();
        frontier.pop();
        constexpr int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : dirs) {
          const Cell n{c.x + d[0], c.y + d[1]};
          if (n.x < x0 || n.y < y0 || n.x >= x0 + rw || n.y >= y0 + rh || seen[local(n)]) continue;
          seen[local(n)] = 1;
          if (owner_at(n.x, n.y) == id) {
            frontier.push(n);
          } else if (can_take(n.x, n.y, id) && blob.size() < want) {
            take(n.x, n.y, id, blob);
            frontier.push(n);
          }
        }
      }
      stalls = blob.size() == before ? stalls + 1 : 0;
    }
    if (blob.size() < want) carry = want - blob.size();
  }
  if (carry > 0) {
    throw GenerationError("could not place " + std::to_string(carry) +
                          " remaining obstacle cells without merging clusters");
  }
  return map;
}

/// Perfect maze (depth-first carving) of rooms corridor_width cells wide separated by
/// one-cell walls; the map border acts as the outer wall and leftover strips are filled.
inline GridMap generate_maze(int width, int height, int corridor_width, std::uint64_t seed) {
  if (corridor_width < 1) throw std::invalid_argument("corridor_width must be >= 1");
  const int pitch = corridor_width + 1;
  const int rooms_x = (width + 1) / pitch;
  const int rooms_y = (height + 1) / pitch;
  if (rooms_x < 1 || rooms_y < 1) throw std::invalid_argument("map too small for corridor width");

  GridMap map(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool wall_col = x % pitch == corridor_width || x >= rooms_x * pitch - 1;
      const bool wall_row = y % pitch == corridor_width || y >= rooms_y * pitch - 1;
      if (wall_col || wall_row) map.set({x, y}, true);
    }
  }

  Rng rng(seed);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(rooms_x) * rooms_y, 0);
  std::vector<Cell> stack{{0, 0}};
  visited[0] = 1;
  while (!stack.empty()) {
    const Cell room = stack.back();
    std::vector<Cell> next;
    constexpr int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : dirs) {
      const Cell n{room.x + d[0], room.y + d[1]};
      if (n.x < 0 || n.y < 0 || n.x >= rooms_x || n.y >= rooms_y) continue;
      if (!visited[static_cast<std::size_t>(n.y) * rooms_x + n.x]) next.push_back(n);
    }
    if (next.empty()) {
      stack.pop_back();
      continue;
    }
    const Cell n = next[rng.below(next.size())];
    visited[static_cast<std::size_t>(n.y) * rooms_x + n.x] = 1;
    if (n.x != room.x) {
      const int wx = std::min(room.x, n.x) * pitch + corridor_width;
      for (int y = 0; y < corridor_width; ++y) map.set({wx, room.y * pitch + y}, false);
    } else {
      const int wy = std::min(room.y, n.y) * pitch + corridor_width;
      for (int x = 0; x < corridor_width; ++x) map.set({room.x * pitch + x, wy}, false);
    }
    stack.push_back(n);
  }
  return map;
}

/// Lattice point at the lower-left corner of a maze room's centre cell.
inline Point maze_room_center(int room_x, int room_y, int corridor_width) {
  const int pitch = corridor_width + 1;
  return {static_cast<double>(room_x * pitch + corridor_width / 2),
          static_cast<double>(room_y * pitch + corridor_width / 2)};
}

// ---------------------------------------------------------------------------
// Octile text format

inline bool octile_obstacle(char c) {
  switch (c) {
    case '@': case 'O': case 'T': case 'W': case 'S': return true;
    default: return false;
  }
}

inline bool octile_passable(char c) { return c == '.' || c == 'G'; }

inline GridMap load_octile_map(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  auto header_value = [&](std::size_t idx, std::string_view key) -> int {
    if (idx >= lines.size()) throw ParseError(idx + 1, "missing '" + std::string(key) + "' header");
    std::istringstream in(lines[idx]);
    std::string k;
    long long v = 0;
    std::string rest;
    if (!(in >> k >> v) || k != key || (in >> rest) || v <= 0 || v > 1'000'000) {
      throw ParseError(idx + 1, "expected '" + std::string(key) + " <positive integer>'");
    }
    return static_cast<int>(v);
  };
  auto expect_token = [&](std::size_t idx, std::string_view want) {
    if (idx >= lines.size()) throw ParseError(idx + 1, "missing '" + std::string(want) + "'");
    std::istringstream in(lines[idx]);
    std::string a;
    std::string b;
    std::string rest;
    const bool ok = want == "map" ? static_cast<bool>(in >> a) && a == "map" && !(in >> rest)
                                  : static_cast<bool>(in >> a >> b) && a == "type" && b == "octile" && !(in >> rest);
    if (!ok) throw ParseError(idx + 1, "expected '" + std::string(want) + "'");
  };

  expect_token(0, "type octile");
  const int height = header_value(1, "height");
  const int width = header_value(2, "width");
  expect_token(3, "map");

  GridMap map(width, height);
  const std::size_t first_row = 4;
  if (lines.size() < first_row + height) {
    throw ParseError(lines.size() + 1, "expected " + std::to_string(height) + " map rows");
  }
  if (lines.size() > first_row + height) {
    throw ParseError(first_row + height + 1, "unexpected content after " + std::to_string(height) + " map rows");
  }
  for (int y = 0; y < height; ++y) {
    const std::string& row = lines[first_row + y];
    const std::size_t lineno = first_row + y + 1;
    if (row.size() != static_cast<std::size_t>(width)) {
      throw ParseError(lineno, "row has " + std::to_string(row.size()) + " characters, expected " +
                                   std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      const char c = row[x];
      if (octile_obstacle(c)) {
        map.set({x, y}, true);
      } else if (!octile_passable(c)) {
        throw ParseError(lineno, std::string("unknown map character '") + c + "'");
      }
    }
  }
  return map;
}

inline std::string to_octile(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) out.push_back(map.occupied(x, y) ? '@' : '.');
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Native JSON format: {"width": W, "height": H, "occupied": [[cx, cy], ...]}

inline nlohmann::json to_json(const GridMap& map) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : map.occupied_cells()) cells.push_back({c.x, c.y});
  return {{"width", map.width()}, {"height", map.height()}, {"occupied", std::move(cells)}};
}

inline GridMap map_from_json(const nlohmann::json& j) {
  try {
    const int w = j.at("width").get<int>();
    const int h = j.at("height").get<int>();
    std::vector<Cell> cells;
    for (const auto& c : j.at("occupied")) {
      if (!c.is_array() || c.size() != 2) throw std::invalid_argument("occupied entries must be [cx, cy]");
      cells.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    return GridMap(w, h, cells);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON map: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads `.json` files in the native format, anything else as octile text.
inline GridMap load_map_file(const std::string& path) {
  const std::string text = read_text_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("invalid JSON map: ") + e.what());
    }
    return map_from_json(j);
  }
  return load_octile_map(text);
}

}  // namespace anyangle
