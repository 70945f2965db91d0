#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "anyangle/candidate_vertices.hpp"
#include "anyangle/grid_map.hpp"
#include "anyangle/preprocess.hpp"
#include "anyangle/random.hpp"
#include "anyangle/search.hpp"
#include "anyangle/visibility.hpp"

namespace anyangle {

/// Malformed or inconsistent benchmark specification.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MapKind { empty, random, clustered, maze, file };

struct MapSource {
  MapKind kind = MapKind::random;
  int width = 50;
  int height = 50;
  double density = 0.0;
  int clusters = 1;  // clustered only
  int corridor = 1;  // maze only
  std::vector<std::uint64_t> seeds{1};
  std::string path;  // file only
};

enum class QueryPlacement { corners, center_random, explicit_points };

struct QuerySpec {
  QueryPlacement placement = QueryPlacement::corners;
  int count = 1;            // center_random: targets per map
  std::uint64_t seed = 1;   // center_random
  std::vector<Query> points;  // explicit_points
};

struct WPolicy {
  bool escalate = false;
  double w = 1.0;
  double w_max = 2.2;
  double w_step = 0.1;
};

struct BenchSpec {
  std::vector<MapSource> maps;
  QuerySpec queries;
  std::vector<Algorithm> algorithms{Algorithm::astar_grid, Algorithm::theta_star, Algorithm::astar_visgraph,
                                    Algorithm::fa_astar};
  int repetitions = 5;
  bool diagonal_move_allowed = true;
  std::optional<bool> vertex_touch_blocks;  // defaults to the diagonal rule pairing
  VertexMode vertex_mode = VertexMode::hull;
  WPolicy w_policy;
  int threads = 0;  // 0: hardware concurrency

  VisibilityConfig visibility() const {
    return vertex_touch_blocks ? VisibilityConfig{*vertex_touch_blocks}
                               : VisibilityConfig::for_diagonal_rule(diagonal_move_allowed);
  }
};

/// One CSV row.
struct RunResult {
  std::string map_id;
  std::optional<std::uint64_t> seed;
  double density = 0.0;
  std::size_t clusters = 0;
  std::string query;
  Algorithm algorithm = Algorithm::fa_astar;
  double w = 1.0;
  bool found = false;
  double length = 0.0;
  std::size_t evaluated_nodes = 0;
  std::size_t expansions = 0;
  double t_mean_s = 0.0;
  double t_median_s = 0.0;
  bool pruning_loss = false;
  std::size_t v1 = 0;
  double preprocess_s = 0.0;
  std::vector<Point> waypoints;
  std::string note;
};

namespace detail {

template <class T>
T spec_field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(std::string("field '") + key + "' has the wrong type");
  }
}

inline Point point_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SpecError(std::string(what) + " must be a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline MapSource map_source_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("each map entry must be an object");
  MapSource m;
  if (j.contains("file")) {
    m.kind = MapKind::file;
    m.path = spec_field<std::string>(j, "file", "");
    m.seeds.clear();
    return m;
  }
  const auto gen = spec_field<std::string>(j, "generator", "random");
  if (gen == "empty") m.kind = MapKind::empty;
  else if (gen == "random") m.kind = MapKind::random;
  else if (gen == "clustered") m.kind = MapKind::clustered;
  else if (gen == "maze") m.kind = MapKind::maze;
  else throw SpecError("unknown generator '" + gen + "'");
  m.width = spec_field(j, "width", 50);
  m.height = spec_field(j, "height", 50);
  if (m.width < 1 || m.height < 1) throw SpecError("map width and height must be positive");
  m.density = spec_field(j, "density", 0.0);
  m.clusters = spec_field(j, "clusters", 1);
  m.corridor = spec_field(j, "corridor", 1);
  if (j.contains("seeds")) {
    m.seeds = spec_field<std::vector<std::uint64_t>>(j, "seeds", {});
  } else {
    const auto first = spec_field<std::uint64_t>(j, "first_seed", 1);
    const int count = spec_field(j, "seed_count", 1);
    if (count < 1) throw SpecError("seed_count must be >= 1");
    m.seeds.clear();
    for (int i = 0; i < count; ++i) m.seeds.push_back(first + static_cast<std::uint64_t>(i));
  }
  if (m.seeds.empty()) throw SpecError("a generated map needs at least one seed");
  if (m.kind == MapKind::empty) m.seeds.resize(1);
  return m;
}

}  // namespace detail

/// Parses the JSON form of a BenchSpec. Relative map file paths resolve against base_dir.
inline BenchSpec bench_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw SpecError("bench spec must be a JSON object");
  BenchSpec s;
  if (!j.contains("maps") || !j.at("maps").is_array() || j.at("maps").empty()) {
    throw SpecError("bench spec needs a non-empty 'maps' array");
  }
  for (const auto& m : j.at("maps")) {
    MapSource src = detail::map_source_from_json(m);
    if (src.kind == MapKind::file && !base_dir.empty() && std::filesystem::path(src.path).is_relative()) {
      src.path = (base_dir / src.path).string();
    }
    s.maps.push_back(std::move(src));
  }

  if (j.contains("queries")) {
    const auto& q = j.at("queries");
    if (!q.is_object()) throw SpecError("'queries' must be an object");
    const auto placement = detail::spec_field<std::string>(q, "placement", "corners");
    if (placement == "corners") {
      s.queries.placement = QueryPlacement::corners;
    } else if (placement == "center_random") {
      s.queries.placement = QueryPlacement::center_random;
      s.queries.count = detail::spec_field(q, "count", 1);
      s.queries.seed = detail::spec_field<std::uint64_t>(q, "seed", 1);
      if (s.queries.count < 1) throw SpecError("query count must be >= 1");
    } else if (placement == "explicit") {
      s.queries.placement = QueryPlacement::explicit_points;
      if (!q.contains("points") || !q.at("points").is_array() || q.at("points").empty()) {
        throw SpecError("explicit placement needs a non-empty 'points' array");
      }
      for (const auto& p : q.at("points")) {
        if (!p.is_object() || !p.contains("start") || !p.contains("target")) {
          throw SpecError("each explicit query needs 'start' and 'target'");
        }
        s.queries.points.push_back(
            {detail::point_from_json(p.at("start"), "start"), detail::point_from_json(p.at("target"), "target")});
      }
    } else {
      throw SpecError("unknown query placement '" + placement + "'");
    }
  }

  if (j.contains("algorithms")) {
    s.algorithms.clear();
    for (const auto& a : detail::spec_field<std::vector<std::string>>(j, "algorithms", {})) {
      try {
        s.algorithms.push_back(algorithm_from_string(a));
      } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
      }
    }
    if (s.algorithms.empty()) throw SpecError("'algorithms' must not be empty");
  }
  s.repetitions = detail::spec_field(j, "repetitions", 5);
  if (s.repetitions < 1) throw SpecError("repetitions must be >= 1");
  s.diagonal_move_allowed = detail::spec_field(j, "diagonal_move_allowed", true);
  if (j.contains("vertex_touch_blocks") && !j.at("vertex_touch_blocks").is_null()) {
    s.vertex_touch_blocks = detail::spec_field(j, "vertex_touch_blocks", false);
  }
  try {
    s.vertex_mode = vertex_mode_from_string(detail::spec_field<std::string>(j, "vertex_mode", "hull"));
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  if (j.contains("w_policy")) {
    const auto& w = j.at("w_policy");
    if (!w.is_object()) throw SpecError("'w_policy' must be an object");
    const auto mode = detail::spec_field<std::string>(w, "mode", "fixed");
    if (mode != "fixed" && mode != "escalate") throw SpecError("unknown w_policy mode '" + mode + "'");
    s.w_policy.escalate = mode == "escalate";
    s.w_policy.w = detail::spec_field(w, "w", 1.0);
    s.w_policy.w_max = detail::spec_field(w, "w_max", 2.2);
    s.w_policy.w_step = detail::spec_field(w, "w_step", 0.1);
    if (!(s.w_policy.w >= 1.0) || !(s.w_policy.w_max >= 1.0) || !(s.w_policy.w_step > 0.0)) {
      throw SpecError("w must be >= 1, w_max >= 1 and w_step > 0");
    }
  }
  s.threads = detail::spec_field(j, "threads", 0);
  if (s.threads < 0) throw SpecError("threads must be >= 0");
  return s;
}

inline BenchSpec load_bench_spec(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("bench spec is not valid JSON: ") + e.what());
  }
  return bench_spec_from_json(j, std::filesystem::path(path).parent_path());
}

/// A loaded or generated map together with its CSV identity.
struct BenchMap {
  std::string id;
  std::optional<std::uint64_t> seed;
  double density = 0.0;
  GridMap map;
  std::optional<Point> maze_start;  // maze generator: room centres at opposite corners
  std::optional<Point> maze_target;
};

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::vector<BenchMap> materialize_maps(const BenchSpec& spec) {
  std::vector<BenchMap> out;
  for (const MapSource& src : spec.maps) {
    if (src.kind == MapKind::file) {
      BenchMap bm;
      bm.map = load_map_file(src.path);
      bm.id = std::filesystem::path(src.path).filename().string();
      bm.density = static_cast<double>(bm.map.occupied_count()) / (static_cast<double>(bm.map.width()) * bm.map.height());
      out.push_back(std::move(bm));
      continue;
    }
    for (std::uint64_t seed : src.seeds) {
      BenchMap bm;
      const std::string size = std::to_string(src.width) + "x" + std::to_string(src.height);
      switch (src.kind) {
        case MapKind::empty:
          bm.map = GridMap(src.width, src.height);
          bm.id = "empty-" + size;
          break;
        case MapKind::random:
          bm.map = generate_random(src.width, src.height, src.density, seed);
          bm.id = "random-" + size + "-d" + format_number(src.density) + "-s" + std::to_string(seed);
          bm.seed = seed;
          bm.density = src.density;
          break;
        case MapKind::clustered:
          bm.map = generate_clustered(src.width, src.height, src.density, src.clusters, seed);
          bm.id = "clustered-" + size + "-d" + format_number(src.density) + "-k" + std::to_string(src.clusters) +
                  "-s" + std::to_string(seed);
          bm.seed = seed;
          bm.density = src.density;
          break;
        case MapKind::maze: {
          bm.map = generate_maze(src.width, src.height, src.corridor, seed);
          bm.id = "maze-" + size + "-c" + std::to_string(src.corridor) + "-s" + std::to_string(seed);
          bm.seed = seed;
          bm.density =
              static_cast<double>(bm.map.occupied_count()) / (static_cast<double>(src.width) * src.height);
          const int rooms_x = (src.width + 1) / (src.corridor + 1);
          const int rooms_y = (src.height + 1) / (src.corridor + 1);
          bm.maze_start = maze_room_center(0, rooms_y - 1, src.corridor);
          bm.maze_target = maze_room_center(rooms_x - 1, 0, src.corridor);
          break;
        }
        case MapKind::file: break;
      }
      out.push_back(std::move(bm));
    }
  }
  return out;
}

/// Queries for one map. Corner placement on a maze uses its opposite-corner room centres.
inline std::vector<Query> queries_for(const BenchMap& bm, std::size_t map_index, const QuerySpec& qs) {
  const GridMap& m = bm.map;
  switch (qs.placement) {
    case QueryPlacement::corners:
      if (bm.maze_start) return {{*bm.maze_start, *bm.maze_target}};
      return {corner_query(m)};
    case QueryPlacement::center_random: {
      const Point start{static_cast<double>(m.width() / 2), static_cast<double>(m.height() / 2)};
      Rng rng(qs.seed * 0x9E3779B97F4A7C15ULL + map_index);
      std::vector<Query> out;
      while (out.size() < static_cast<std::size_t>(qs.count)) {
        const Point t{static_cast<double>(rng.between(0, m.width())), static_cast<double>(rng.between(0, m.height()))};
        if (t != start) out.push_back({start, t});
      }
      return out;
    }
    case QueryPlacement::explicit_points: return qs.points;
  }
  return {};
}

inline std::string query_label(const Query& q) {
  return format_number(q.start.x) + ":" + format_number(q.start.y) + "-" + format_number(q.target.x) + ":" +
         format_number(q.target.y);
}

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline bool same_path(const PathResult& a, const PathResult& b) {
  return a.found == b.found && a.waypoints == b.waypoints && a.evaluated_nodes == b.evaluated_nodes &&
         a.expansions == b.expansions;
}

struct MapWork {
  BenchMap bm;
  std::shared_ptr<const Preprocessed> fa_pre;  // spec vertex mode
  std::shared_ptr<const Preprocessed> vg_pre;  // convex-corner mode
  double preprocess_s = 0.0;
  std::vector<Query> queries;
};

}  // namespace detail

/// Runs every (map, query, algorithm) combination. Each map is preprocessed once per
/// vertex mode it needs; units of work (map, query) are spread over a worker pool and
/// the rows come back in spec order.
inline std::vector<RunResult> run_suite(const BenchSpec& spec) {
  const VisibilityConfig vis = spec.visibility();
  const bool wants_fa = std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::fa_astar) !=
                        spec.algorithms.end();
  std::vector<detail::MapWork> maps;
  {
    std::vector<BenchMap> loaded = materialize_maps(spec);
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      detail::MapWork mw;
      mw.queries = queries_for(loaded[i], i, spec.queries);
      for (const Query& q : mw.queries) validate_query(q, loaded[i].map);
      const auto t0 = std::chrono::steady_clock::now();
      auto pre = std::make_shared<const Preprocessed>(
          preprocess(loaded[i].map, spec.diagonal_move_allowed, spec.vertex_mode));
      mw.fa_pre = pre;
      if (spec.vertex_mode == VertexMode::convex_corners) {
        mw.vg_pre = pre;
      } else {
        const bool needs_vg = wants_fa || std::find(spec.algorithms.begin(), spec.algorithms.end(),
                                                    Algorithm::astar_visgraph) != spec.algorithms.end();
        if (needs_vg) {
          mw.vg_pre = std::make_shared<const Preprocessed>(
              preprocess(loaded[i].map, spec.diagonal_move_allowed, VertexMode::convex_corners));
        }
      }
      mw.preprocess_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      mw.bm = std::move(loaded[i]);
      maps.push_back(std::move(mw));
    }
  }

  struct Unit {
    std::size_t map;
    std::size_t query;
  };
  std::vector<Unit> units;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    for (std::size_t q = 0; q < maps[m].queries.size(); ++q) units.push_back({m, q});
  }
  std::vector<std::vector<RunResult>> unit_rows(units.size());

  auto run_unit = [&](std::size_t u) {
    const detail::MapWork& mw = maps[units[u].map];
    const Query& q = mw.queries[units[u].query];
    const GridMap& map = mw.bm.map;
    std::optional<PathResult> reference;  // visibility-graph optimum, computed at most once
    auto optimum = [&]() -> const PathResult& {
      if (!reference) reference = astar_visgraph(q, map, *mw.vg_pre, vis);
      return *reference;
    };

    for (Algorithm algo : spec.algorithms) {
      RunResult row;
      row.map_id = mw.bm.id;
      row.seed = mw.bm.seed;
      row.density = mw.bm.density;
      row.clusters = mw.fa_pre->clusters.size();
      row.query = query_label(q);
      row.algorithm = algo;
      row.v1 = mw.fa_pre->convex.size();
      row.preprocess_s = mw.preprocess_s;
      row.w = algo == Algorithm::fa_astar ? spec.w_policy.w : 1.0;
      try {
        auto once = [&]() -> PathResult {
          switch (algo) {
            case Algorithm::astar_grid: return astar_grid(q, map, spec.diagonal_move_allowed, vis);
            case Algorithm::theta_star: return theta_star(q, map, spec.diagonal_move_allowed, vis);
            case Algorithm::astar_visgraph: return astar_visgraph(q, map, *mw.vg_pre, vis);
            case Algorithm::fa_astar:
              if (spec.w_policy.escalate) {
                const PathResult& ref = optimum();
                const double target_len = ref.found ? ref.length : -1.0;
                return fa_astar_escalating(q, map, *mw.fa_pre, vis, target_len, spec.w_policy.w_max,
                                           spec.w_policy.w_step)
                    .result;
              }
              return fa_astar(q, CvContext{map, *mw.fa_pre, vis, spec.w_policy.w});
          }
          throw std::logic_error("unhandled algorithm");
        };
        std::vector<double> times;
        PathResult first;
        for (int rep = 0; rep < spec.repetitions; ++rep) {
          const auto t0 = std::chrono::steady_clock::now();
          PathResult r = once();
          times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
          if (rep == 0) {
            first = std::move(r);
          } else if (!detail::same_path(first, r)) {
            row.note = "results differ between repetitions";
          }
        }
        row.found = first.found;
        row.length = first.length;
        row.evaluated_nodes = first.evaluated_nodes;
        row.expansions = first.expansions;
        row.waypoints = first.waypoints;
        if (algo == Algorithm::fa_astar) row.w = first.w;
        double sum = 0.0;
        for (double t : times) sum += t;
        row.t_mean_s = sum / static_cast<double>(times.size());
        row.t_median_s = detail::median(times);
        if (algo == Algorithm::fa_astar && !first.found && optimum().found) row.pruning_loss = true;
        if (algo == Algorithm::astar_visgraph && !reference) reference = first;
      } catch (const std::exception& e) {
        row.found = false;
        row.note = e.what();
      }
      unit_rows[u].push_back(std::move(row));
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(units.size(), spec.threads > 0 ? static_cast<std::size_t>(spec.threads) : hw);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t u = next++; u < units.size(); u = next++) {
      try {
        run_unit(u);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<RunResult> rows;
  for (auto& r : unit_rows) std::move(r.begin(), r.end(), std::back_inserter(rows));
  return rows;
}

// ---- CSV -------------------------------------------------------------------

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "map_id", "seed",     "density",      "clusters",    "query", "algorithm", "w",         "L",    "No",
      "expansions", "T_mean_s", "T_median_s", "found", "pruning_loss", "v1", "preprocess_s", "waypoints", "note"};
  return cols;
}

namespace detail {

inline std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

inline std::string waypoint_field(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += format_number(pts[i].x) + ":" + format_number(pts[i].y);
  }
  return out;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line, const char* column) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("bad value '") + s + "' in column " + column);
  }
  return v;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<RunResult>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const RunResult& r : rows) {
    os << detail::csv_safe(r.map_id) << ',' << (r.seed ? std::to_string(*r.seed) : "") << ','
       << format_number(r.density) << ',' << r.clusters << ',' << r.query << ',' << to_string(r.algorithm) << ','
       << format_number(r.w) << ',' << (r.found ? format_number(r.length) : "") << ',' << r.evaluated_nodes << ','
       << r.expansions << ',' << format_number(r.t_mean_s) << ',' << format_number(r.t_median_s) << ','
       << (r.found ? "true" : "false") << ',' << (r.pruning_loss ? "true" : "false") << ',' << r.v1 << ','
       << format_number(r.preprocess_s) << ',' << detail::waypoint_field(r.waypoints) << ','
       << detail::csv_safe(r.note) << '\n';
  }
}

inline void write_csv_file(const std::string& path, const std::vector<RunResult>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  write_csv(out, rows);
  if (!out) throw FileError("write failed for " + path);
}

inline std::vector<RunResult> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty CSV");
  const auto header = detail::split(line, ',');
  if (header != csv_columns()) throw ParseError(1, "unexpected CSV header");
  std::vector<RunResult> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split(line, ',');
    if (f.size() != header.size()) throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields");
    RunResult r;
    r.map_id = f[0];
    if (!f[1].empty()) r.seed = detail::parse_number<std::uint64_t>(f[1], line_no, "seed");
    r.density = detail::parse_number<double>(f[2], line_no, "density");
    r.clusters = detail::parse_number<std::size_t>(f[3], line_no, "clusters");
    r.query = f[4];
    try {
      r.algorithm = algorithm_from_string(f[5]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    r.w = detail::parse_number<double>(f[6], line_no, "w");
    if (f[12] != "true" && f[12] != "false") throw ParseError(line_no, "found must be true or false");
    r.found = f[12] == "true";
    if (r.found) r.length = detail::parse_number<double>(f[7], line_no, "L");
    r.evaluated_nodes = detail::parse_number<std::size_t>(f[8], line_no, "No");
    r.expansions = detail::parse_number<std::size_t>(f[9], line_no, "expansions");
    r.t_mean_s = detail::parse_number<double>(f[10], line_no, "T_mean_s");
    r.t_median_s = detail::parse_number<double>(f[11], line_no, "T_median_s");
    r.pruning_loss = f[13] == "true";
    r.v1 = detail::parse_number<std::size_t>(f[14], line_no, "v1");
    r.preprocess_s = detail::parse_number<double>(f[15], line_no, "preprocess_s");
    if (!f[16].empty()) {
      for (const auto& tok : detail::split(f[16], ' ')) {
        const auto xy = detail::split(tok, ':');
        if (xy.size() != 2) throw ParseError(line_no, "bad waypoint '" + tok + "'");
        r.waypoints.push_back(
            {detail::parse_number<double>(xy[0], line_no, "waypoints"), detail::parse_number<double>(xy[1], line_no, "waypoints")});
      }
    }
    r.note = f[17];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<RunResult> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  return read_csv(in);
}

}  // namespace anyangle
