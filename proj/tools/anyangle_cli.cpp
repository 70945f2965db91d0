// anyangle: generate maps, solve single queries, run benchmark suites, summarize results.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "anyangle/anyangle.hpp"

namespace {

using namespace anyangle;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitInternal = 2;

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected X,Y but got '" + text + "'");
  try {
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    const double x = std::stod(text.substr(0, comma), &used_x);
    const double y = std::stod(text.substr(comma + 1), &used_y);
    if (used_x != comma || used_y != text.size() - comma - 1) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("expected X,Y but got '" + text + "'");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << text;
  if (!out) throw FileError("write failed for " + path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

nlohmann::json points_json(const std::vector<Point>& pts) {
  nlohmann::json out = nlohmann::json::array();
  for (const Point& p : pts) out.push_back({p.x, p.y});
  return out;
}

struct GenerateArgs {
  std::string kind = "random";
  int width = 50;
  int height = 50;
  double density = 0.1;
  int clusters = 1;
  int corridor = 7;
  std::uint64_t seed = 1;
  std::string format;
  std::string output = "-";
};

int run_generate(const GenerateArgs& a) {
  GridMap map;
  if (a.kind == "empty") map = GridMap(a.width, a.height);
  else if (a.kind == "random") map = generate_random(a.width, a.height, a.density, a.seed);
  else if (a.kind == "clustered") map = generate_clustered(a.width, a.height, a.density, a.clusters, a.seed);
  else if (a.kind == "maze") map = generate_maze(a.width, a.height, a.corridor, a.seed);
  else throw std::invalid_argument("unknown map kind '" + a.kind + "'");

  const std::string format = !a.format.empty() ? a.format : (ends_with(a.output, ".json") ? "json" : "octile");
  if (format == "json") {
    nlohmann::json j = to_json(map);
    j["generator"] = a.kind;
    j["seed"] = a.seed;
    j["rng"] = std::string(Rng::algorithm);
    write_text(a.output, j.dump() + "\n");
  } else if (format == "octile") {
    write_text(a.output, to_octile(map));
  } else {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
  return kExitOk;
}

struct SolveArgs {
  std::string map_path;
  std::string start;
  std::string target;
  bool corners = false;
  std::string algorithm = "fa_astar";
  double w = 1.0;
  bool escalate = false;
  double w_max = 2.2;
  double w_step = 0.1;
  std::string vertex_mode = "hull";
  bool no_diagonal = false;
  std::optional<bool> touch_blocks;
  bool trace = false;
  bool with_evaluated = false;
  std::string dump_vertices;
  std::string svg;
};

int run_solve(const SolveArgs& a) {
  const GridMap map = load_map_file(a.map_path);
  Query q;
  if (a.corners) {
    q = corner_query(map);
  } else {
    if (a.start.empty() || a.target.empty()) throw std::invalid_argument("give --start and --target, or --corners");
    q = {parse_point(a.start), parse_point(a.target)};
  }
  validate_query(q, map);
  const Algorithm algo = algorithm_from_string(a.algorithm);
  const bool diagonal = !a.no_diagonal;
  const VisibilityConfig vis =
      a.touch_blocks ? VisibilityConfig{*a.touch_blocks} : VisibilityConfig::for_diagonal_rule(diagonal);
  const VertexMode mode = vertex_mode_from_string(a.vertex_mode);
  if (!(a.w >= 1.0)) throw std::invalid_argument("--w must be >= 1");

  std::optional<Preprocessed> pre;
  std::optional<Preprocessed> vg_pre;
  auto fa_pre = [&]() -> const Preprocessed& {
    if (!pre) pre = preprocess(map, diagonal, mode);
    return *pre;
  };
  auto visgraph_pre = [&]() -> const Preprocessed& {
    if (mode == VertexMode::convex_corners) return fa_pre();
    if (!vg_pre) vg_pre = preprocess(map, diagonal, VertexMode::convex_corners);
    return *vg_pre;
  };

  std::ostringstream trace;
  PathResult r;
  std::optional<EscalationResult> esc;
  switch (algo) {
    case Algorithm::astar_grid: r = astar_grid(q, map, diagonal, vis); break;
    case Algorithm::theta_star: r = theta_star(q, map, diagonal, vis); break;
    case Algorithm::astar_visgraph: r = astar_visgraph(q, map, visgraph_pre(), vis); break;
    case Algorithm::fa_astar:
      if (a.escalate) {
        const PathResult ref = astar_visgraph(q, map, visgraph_pre(), vis);
        esc = fa_astar_escalating(q, map, fa_pre(), vis, ref.found ? ref.length : -1.0, a.w_max, a.w_step);
        r = esc->result;
      } else {
        r = fa_astar(q, CvContext{map, fa_pre(), vis, a.w, a.trace ? &trace : nullptr});
      }
      break;
  }
  if (a.trace) std::cerr << trace.str();

  nlohmann::json out{{"algorithm", std::string(to_string(r.algorithm))},
                     {"map", {{"width", map.width()}, {"height", map.height()}}},
                     {"start", {q.start.x, q.start.y}},
                     {"target", {q.target.x, q.target.y}},
                     {"found", r.found},
                     {"L", r.found ? nlohmann::json(r.length) : nlohmann::json(nullptr)},
                     {"No", r.evaluated_nodes},
                     {"expansions", r.expansions},
                     {"elapsed_s", r.elapsed_s},
                     {"waypoints", points_json(r.waypoints)}};
  if (algo == Algorithm::fa_astar) {
    out["w"] = r.w;
    out["dead_ends"] = r.dead_ends;
    out["vertex_mode"] = std::string(to_string(mode));
    if (esc) {
      out["w_attempted"] = esc->attempted;
      out["matched_optimum"] = esc->matched;
    }
  }
  if (pre) out["clusters"] = pre->clusters.size();
  if (a.with_evaluated) out["evaluated"] = points_json(r.evaluated);
  std::cout << out.dump(2) << '\n';

  if (!a.dump_vertices.empty()) {
    const Preprocessed& p = fa_pre();
    nlohmann::json dump{{"vertex_mode", std::string(to_string(p.mode))},
                        {"clusters", p.clusters.size()},
                        {"columns", {"x", "y", "obstacle_index", "cluster_index"}},
                        {"V_all", to_json(p.all)},
                        {"V_convex", to_json(p.convex)}};
    write_text(a.dump_vertices, dump.dump() + "\n");
  }
  if (!a.svg.empty()) {
    if (!r.found) throw std::invalid_argument("no path found, nothing to render");
    render_path(map, r, a.svg);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string spec;
  std::string output = "-";
  int threads = -1;
  bool summary = false;
};

int run_bench(const BenchArgs& a) {
  BenchSpec spec = load_bench_spec(a.spec);
  if (a.threads >= 0) spec.threads = a.threads;
  const auto rows = run_suite(spec);
  if (a.output == "-") {
    write_csv(std::cout, rows);
  } else {
    write_csv_file(a.output, rows);
  }
  if (a.summary) std::cerr << to_text(compare_report(rows));
  return kExitOk;
}

struct ReportArgs {
  std::string csv;
  std::string format = "text";
  std::string json_out;
};

int run_report(const ReportArgs& a) {
  const auto rows = read_csv_file(a.csv);
  if (rows.empty()) throw std::invalid_argument("no result rows in " + a.csv);
  const Report rep = compare_report(rows);
  if (a.format == "json") std::cout << to_json(rep).dump(2) << '\n';
  else if (a.format == "text") std::cout << to_text(rep);
  else throw std::invalid_argument("unknown format '" + a.format + "'");
  if (!a.json_out.empty()) write_text(a.json_out, to_json(rep).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Any-angle path planning on grid maps: FA-A*, Theta*, A* on grids and on visibility graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a map file");
  gen_cmd->add_option("--kind", gen.kind, "empty, random, clustered or maze")->capture_default_str();
  gen_cmd->add_option("--width", gen.width)->capture_default_str();
  gen_cmd->add_option("--height", gen.height)->capture_default_str();
  gen_cmd->add_option("--density", gen.density, "Obstacle fraction (random, clustered)")->capture_default_str();
  gen_cmd->add_option("--clusters", gen.clusters, "Blob count (clustered)")->capture_default_str();
  gen_cmd->add_option("--corridor", gen.corridor, "Corridor width (maze)")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--format", gen.format, "octile or json; defaults from the output extension");
  gen_cmd->add_option("-o,--output", gen.output, "Output file, - for stdout")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one query and print the result as JSON");
  solve_cmd->add_option("--map", solve.map_path, "Octile (.map) or JSON (.json) map file")->required();
  solve_cmd->add_option("--start", solve.start, "Start lattice point X,Y");
  solve_cmd->add_option("--target", solve.target, "Target lattice point X,Y");
  solve_cmd->add_flag("--corners", solve.corners, "Query from (0,0) to (W-1,H-1)");
  solve_cmd->add_option("--algorithm", solve.algorithm, "astar_grid, theta_star, astar_visgraph or fa_astar")
      ->capture_default_str();
  solve_cmd->add_option("--w", solve.w, "Focal triangle scale factor")->capture_default_str();
  solve_cmd->add_flag("--escalate", solve.escalate, "Raise w until the visibility-graph optimum is met");
  solve_cmd->add_option("--w-max", solve.w_max)->capture_default_str();
  solve_cmd->add_option("--w-step", solve.w_step)->capture_default_str();
  solve_cmd->add_option("--vertex-mode", solve.vertex_mode, "hull or convex_corners")->capture_default_str();
  solve_cmd->add_flag("--no-diagonal", solve.no_diagonal, "Disallow diagonal moves between touching obstacles");
  solve_cmd->add_option("--touch-blocks", solve.touch_blocks, "Override whether grazing a cell corner blocks");
  solve_cmd->add_flag("--trace", solve.trace, "Print candidate-vertex steps to stderr");
  solve_cmd->add_flag("--evaluated", solve.with_evaluated, "Include evaluated nodes in the output");
  solve_cmd->add_option("--dump-vertices", solve.dump_vertices, "Write the vertex tables as JSON");
  solve_cmd->add_option("--svg", solve.svg, "Write an SVG drawing of the path");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark spec and write CSV");
  bench_cmd->add_option("spec", bench.spec, "Benchmark spec (JSON)")->required();
  bench_cmd->add_option("-o,--output", bench.output, "CSV file, - for stdout")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Override the spec's worker count (0 = all cores)");
  bench_cmd->add_flag("--summary", bench.summary, "Print a comparison summary to stderr");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Summarize a benchmark CSV");
  report_cmd->add_option("csv", report.csv, "CSV written by bench")->required();
  report_cmd->add_option("--format", report.format, "text or json")->capture_default_str();
  report_cmd->add_option("--json", report.json_out, "Also write the JSON summary to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen_cmd) return run_generate(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*bench_cmd) return run_bench(bench);
    if (*report_cmd) return run_report(report);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
