#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "anyangle/bench.hpp"

namespace anyangle {

/// One result row set against the other algorithms on the same (map, query).
/// A ratio whose reference algorithm is missing from the group is 1.
struct ReportEntry {
  std::string map_id;
  std::string query;
  Algorithm algorithm = Algorithm::fa_astar;
  bool found = false;
  double length = 0.0;
  double length_ratio = 1.0;      // L / L_opt
  std::size_t evaluated_nodes = 0;
  double nodes_ratio = 1.0;       // No / No of FA-A*
  double t_median_s = 0.0;
  double speedup_vs_visgraph = 1.0;  // T of A* on the visibility graph / T
};

struct WinLoss {
  std::size_t wins = 0;  // FA-A* strictly better
  std::size_t ties = 0;
  std::size_t losses = 0;
};

/// FA-A* against one other algorithm, counted over groups where both found a path.
struct Versus {
  Algorithm other = Algorithm::astar_grid;
  WinLoss length;
  WinLoss nodes;
  WinLoss time;
};

struct Report {
  std::vector<ReportEntry> entries;
  std::vector<Versus> versus;
  std::map<Algorithm, double> mean_length_ratio;
  std::map<Algorithm, double> mean_nodes_ratio;
};

inline Report compare_report(const std::vector<RunResult>& rows) {
  Report rep;
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const RunResult*>> groups;
  for (const RunResult& r : rows) {
    const auto key = std::make_pair(r.map_id, r.query);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }

  std::map<Algorithm, std::pair<double, std::size_t>> len_acc;
  std::map<Algorithm, std::pair<double, std::size_t>> nodes_acc;
  std::map<Algorithm, Versus> versus;

  for (const auto& key : order) {
    const auto& g = groups[key];
    auto find = [&](Algorithm a) -> const RunResult* {
      for (const RunResult* r : g) {
        if (r->algorithm == a) return r;
      }
      return nullptr;
    };
    const RunResult* vg = find(Algorithm::astar_visgraph);
    const RunResult* fa = find(Algorithm::fa_astar);
    double l_opt = 0.0;
    bool have_opt = false;
    if (vg != nullptr && vg->found) {
      l_opt = vg->length;
      have_opt = true;
    } else {
      for (const RunResult* r : g) {
        if (r->found && (!have_opt || r->length < l_opt)) {
          l_opt = r->length;
          have_opt = true;
        }
      }
    }

    for (const RunResult* r : g) {
      ReportEntry e;
      e.map_id = r->map_id;
      e.query = r->query;
      e.algorithm = r->algorithm;
      e.found = r->found;
      e.length = r->length;
      e.evaluated_nodes = r->evaluated_nodes;
      e.t_median_s = r->t_median_s;
      if (r->found && have_opt && l_opt > 0.0) e.length_ratio = r->length / l_opt;
      if (fa != nullptr && fa->evaluated_nodes > 0) {
        e.nodes_ratio = static_cast<double>(r->evaluated_nodes) / static_cast<double>(fa->evaluated_nodes);
      }
      if (vg != nullptr && r->t_median_s > 0.0) e.speedup_vs_visgraph = vg->t_median_s / r->t_median_s;
      if (r->found) {
        auto& la = len_acc[r->algorithm];
        la.first += e.length_ratio;
        ++la.second;
      }
      auto& na = nodes_acc[r->algorithm];
      na.first += e.nodes_ratio;
      ++na.second;
      rep.entries.push_back(e);
    }

    if (fa == nullptr || !fa->found) continue;
    for (const RunResult* r : g) {
      if (r == fa || !r->found) continue;
      Versus& v = versus[r->algorithm];
      v.other = r->algorithm;
      auto tally = [](WinLoss& wl, double mine, double theirs, bool exact) {
        const bool tie = exact ? mine == theirs : same_length(mine, theirs);
        if (tie) ++wl.ties;
        else if (mine < theirs) ++wl.wins;
        else ++wl.losses;
      };
      tally(v.length, fa->length, r->length, false);
      tally(v.nodes, static_cast<double>(fa->evaluated_nodes), static_cast<double>(r->evaluated_nodes), true);
      tally(v.time, fa->t_median_s, r->t_median_s, true);
    }
  }
  for (const auto& [a, acc] : len_acc) rep.mean_length_ratio[a] = acc.first / static_cast<double>(acc.second);
  for (const auto& [a, acc] : nodes_acc) rep.mean_nodes_ratio[a] = acc.first / static_cast<double>(acc.second);
  for (const auto& [a, v] : versus) rep.versus.push_back(v);
  return rep;
}

inline nlohmann::json to_json(const Report& rep) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const ReportEntry& e : rep.entries) {
    j["rows"].push_back({{"map_id", e.map_id},
                         {"query", e.query},
                         {"algorithm", std::string(to_string(e.algorithm))},
                         {"found", e.found},
                         {"L", e.length},
                         {"L_over_opt", e.length_ratio},
                         {"No", e.evaluated_nodes},
                         {"No_over_fa", e.nodes_ratio},
                         {"T_median_s", e.t_median_s},
                         {"speedup_vs_visgraph", e.speedup_vs_visgraph}});
  }
  auto wl = [](const WinLoss& w) { return nlohmann::json{{"wins", w.wins}, {"ties", w.ties}, {"losses", w.losses}}; };
  j["fa_astar_versus"] = nlohmann::json::object();
  for (const Versus& v : rep.versus) {
    j["fa_astar_versus"][std::string(to_string(v.other))] = {
        {"L", wl(v.length)}, {"No", wl(v.nodes)}, {"T", wl(v.time)}};
  }
  j["mean_L_over_opt"] = nlohmann::json::object();
  for (const auto& [a, m] : rep.mean_length_ratio) j["mean_L_over_opt"][std::string(to_string(a))] = m;
  j["mean_No_over_fa"] = nlohmann::json::object();
  for (const auto& [a, m] : rep.mean_nodes_ratio) j["mean_No_over_fa"][std::string(to_string(a))] = m;
  return j;
}

inline std::string to_text(const Report& rep) {
  std::size_t map_w = 6;
  std::size_t query_w = 5;
  for (const ReportEntry& e : rep.entries) {
    map_w = std::max(map_w, e.map_id.size());
    query_w = std::max(query_w, e.query.size());
  }
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %-*s  %-14s  %5s  %12s  %9s  %9s  %9s  %12s  %9s\n", static_cast<int>(map_w),
                "map_id", static_cast<int>(query_w), "query", "algorithm", "found", "L", "L/L_opt", "No", "No/FA",
                "T_median_s", "vs_vg");
  out += buf;
  for (const ReportEntry& e : rep.entries) {
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %-14s  %5s  %12.6f  %9.6f  %9zu  %9.3f  %12.6f  %9.3f\n",
                  static_cast<int>(map_w), e.map_id.c_str(), static_cast<int>(query_w), e.query.c_str(),
                  std::string(to_string(e.algorithm)).c_str(), e.found ? "yes" : "no", e.length, e.length_ratio,
                  e.evaluated_nodes, e.nodes_ratio, e.t_median_s, e.speedup_vs_visgraph);
    out += buf;
  }
  if (!rep.versus.empty()) {
    out += "\nfa_astar versus     L (win/tie/loss)   No (win/tie/loss)   T (win/tie/loss)\n";
    for (const Versus& v : rep.versus) {
      std::snprintf(buf, sizeof buf, "%-18s  %5zu/%zu/%-8zu  %7zu/%zu/%-8zu  %6zu/%zu/%zu\n",
                    std::string(to_string(v.other)).c_str(), v.length.wins, v.length.ties, v.length.losses,
                    v.nodes.wins, v.nodes.ties, v.nodes.losses, v.time.wins, v.time.ties, v.time.losses);
      out += buf;
    }
  }
  out += "\nalgorithm           mean L/L_opt   mean No/FA\n";
  for (const auto& [a, m] : rep.mean_nodes_ratio) {
    const auto it = rep.mean_length_ratio.find(a);
    std::snprintf(buf, sizeof buf, "%-18s  %12.6f  %11.3f\n", std::string(to_string(a)).c_str(),
                  it == rep.mean_length_ratio.end() ? 0.0 : it->second, m);
    out += buf;
  }
  return out;
}

}  // namespace anyangle
