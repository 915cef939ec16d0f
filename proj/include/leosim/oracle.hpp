#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "leosim/dijkstra.hpp"
#include "leosim/error.hpp"
#include "leosim/matrices.hpp"
#include "leosim/metrics.hpp"
#include "leosim/routing.hpp"
#include "leosim/topology.hpp"

// Exact solver for the route-selection problem over an explicit route set:
//
//   minimise  sum_i D[a_i][i] + eta_s * #{i < N : a_i != a_{i+1}}
//
// over one active route a_i per slot. The linearised product variables of
// the integer program (one per route and boundary, equal to 1 iff the route
// stays active across the boundary) are never materialised: the "stay"
// branch of the recurrence below is exactly the case where one of them is 1,
// and the "switch" branch the case where all of them are 0.
//
//   best[1][r] = D[r][1]
//   best[i][r] = D[r][i] + min(best[i-1][r], min_r' best[i-1][r'] + eta_s)
//
// O(K N) time for K routes and N slots.

namespace leosim {

struct OracleSolution {
  SelectionMatrix selection;
  double cost = 0.0;
};

/// Optimal selection by dynamic programming over (slot, route). Ties prefer
/// staying on the current route, then the lowest route index. The returned
/// cost is recomputed from the selection with the delay+penalty evaluator.
inline OracleSolution dp_optimal(const DelayMatrix& d, double eta_s_ms) {
  const std::size_t k = d.routes();
  const int n = static_cast<int>(d.slots());
  if (k == 0 || n == 0) throw ValidationError("empty delay matrix");
  if (auto bad = d.infeasible_slot()) throw ValidationError("infeasible: no route exists at slot " + std::to_string(*bad));

  std::vector<std::vector<double>> best(static_cast<std::size_t>(n), std::vector<double>(k, kInf));
  for (std::size_t r = 0; r < k; ++r) best[0][r] = d.at(r, 1);
  auto argmin = [&](const std::vector<double>& col) {
    return static_cast<std::size_t>(std::min_element(col.begin(), col.end()) - col.begin());
  };
  for (int i = 2; i <= n; ++i) {
    const auto& prev = best[static_cast<std::size_t>(i - 2)];
    const double switch_in = prev[argmin(prev)] + eta_s_ms;
    auto& cur = best[static_cast<std::size_t>(i - 1)];
    for (std::size_t r = 0; r < k; ++r) {
      const double delay = d.at(r, i);
      if (std::isfinite(delay)) cur[r] = delay + std::min(prev[r], switch_in);
    }
  }

  std::vector<std::size_t> choice(static_cast<std::size_t>(n));
  std::size_t r = argmin(best.back());
  choice.back() = r;
  for (int i = n; i >= 2; --i) {
    const auto& prev = best[static_cast<std::size_t>(i - 2)];
    const std::size_t m = argmin(prev);
    if (!(prev[r] <= prev[m] + eta_s_ms)) r = m;
    choice[static_cast<std::size_t>(i - 2)] = r;
  }
  SelectionMatrix sel(k, std::move(choice));
  const double cost = eta_le(d, sel, eta_s_ms);
  return {std::move(sel), cost};
}

/// Exhaustive search over every assignment of finite entries. Independent of
/// dp_optimal; used to cross-check it on small instances.
inline OracleSolution brute_force_optimal(const DelayMatrix& d, double eta_s_ms, double max_assignments = 1e7) {
  const std::size_t k = d.routes();
  const int n = static_cast<int>(d.slots());
  if (k == 0 || n == 0) throw ValidationError("empty delay matrix");
  if (auto bad = d.infeasible_slot()) throw ValidationError("infeasible: no route exists at slot " + std::to_string(*bad));

  std::vector<std::vector<std::size_t>> options(static_cast<std::size_t>(n));
  double space = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (std::size_t r = 0; r < k; ++r)
      if (std::isfinite(d.at(r, i))) options[static_cast<std::size_t>(i - 1)].push_back(r);
    space *= static_cast<double>(options[static_cast<std::size_t>(i - 1)].size());
  }
  if (space > max_assignments)
    throw SizeError("brute force would enumerate " + std::to_string(space) + " assignments");

  std::vector<std::size_t> odometer(static_cast<std::size_t>(n), 0);
  std::vector<std::size_t> choice(static_cast<std::size_t>(n));
  std::optional<OracleSolution> best;
  while (true) {
    for (std::size_t c = 0; c < choice.size(); ++c) choice[c] = options[c][odometer[c]];
    SelectionMatrix sel(k, choice);
    const double cost = eta_le(d, sel, eta_s_ms);
    if (!best || cost < best->cost) best = OracleSolution{std::move(sel), cost};
    std::size_t c = 0;
    while (c < odometer.size() && ++odometer[c] == options[c].size()) odometer[c++] = 0;
    if (c == odometer.size()) break;
  }
  return *best;
}

/// Every hop-bounded simple route of a series together with its delay matrix.
struct RouteSet {
  std::vector<Route> routes;
  DelayMatrix delays;

  [[nodiscard]] std::optional<std::size_t> index_of(const Route& r) const {
    auto it = std::find(routes.begin(), routes.end(), r);
    if (it == routes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - routes.begin());
  }
};

/// All simple routes with at most `hop_limit` edges that exist in at least
/// one slot, in lexicographic vertex order. Intermediate vertices are
/// satellites only.
inline RouteSet enumerate_routes(const SnapshotSeries& series, NodeId src, NodeId dst, std::size_t hop_limit,
                                 std::size_t route_cap = 100000) {
  check_series_endpoints(series, src, dst);
  std::vector<std::set<NodeId>> adjacency(series.roster.num_nodes());
  for (const auto& snap : series.snapshots)
    for (const auto& l : snap.links()) {
      adjacency[l.key.u].insert(l.key.v);
      adjacency[l.key.v].insert(l.key.u);
    }

  std::vector<Route> candidates;
  std::vector<NodeId> path{src};
  std::vector<char> on_path(series.roster.num_nodes(), 0);
  on_path[src] = 1;
  auto dfs = [&](auto&& self, NodeId u) -> void {
    if (path.size() - 1 >= hop_limit) return;
    for (NodeId v : adjacency[u]) {
      if (on_path[v]) continue;
      if (v == dst) {
        path.push_back(v);
        candidates.push_back(Route{path});
        path.pop_back();
        if (candidates.size() > route_cap)
          throw SizeError("route enumeration exceeded the cap of " + std::to_string(route_cap));
        continue;
      }
      if (series.roster.is_ground(v)) continue;
      on_path[v] = 1;
      path.push_back(v);
      self(self, v);
      path.pop_back();
      on_path[v] = 0;
    }
  };
  dfs(dfs, src);

  RouteSet out;
  std::vector<std::vector<double>> rows;
  for (auto& route : candidates) {
    std::vector<double> row;
    bool exists = false;
    for (const auto& snap : series.snapshots) {
      auto d = route.delay_in(snap);
      row.push_back(d.value_or(kInf));
      exists = exists || d.has_value();
    }
    if (!exists) continue;
    out.routes.push_back(std::move(route));
    rows.push_back(std::move(row));
  }
  if (out.routes.empty()) throw ValidationError("no routes within the hop limit");
  out.delays = DelayMatrix(std::move(rows));
  return out;
}

/// Expresses a schedule in the route set's indices; nullopt if some slot is
/// unreachable or uses a route outside the set.
inline std::optional<SelectionMatrix> to_selection(const RoutingSchedule& sched, const RouteSet& set) {
  std::vector<std::size_t> choice;
  for (const auto& r : sched.active) {
    if (!r) return std::nullopt;
    auto idx = set.index_of(*r);
    if (!idx) return std::nullopt;
    choice.push_back(*idx);
  }
  return SelectionMatrix(set.routes.size(), std::move(choice));
}

// Delay matrices as delimited text: one route per line, values separated by
// commas and/or whitespace, "inf" for a nonexistent route-slot, '#' comments.

inline void write_delay_matrix(const DelayMatrix& d, std::ostream& out) {
  for (const auto& row : d.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (std::isinf(row[c])) {
        out << "inf";
      } else {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, row[c]);
        out << std::string_view(buf, static_cast<std::size_t>(end - buf));
      }
    }
    out << '\n';
  }
}

inline DelayMatrix read_delay_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<double> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ',' || std::isspace(static_cast<unsigned char>(line[i])))) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j == i) break;
      const std::string tok = line.substr(i, j - i);
      if (tok == "inf" || tok == "Inf" || tok == "INF") {
        row.push_back(kInf);
      } else {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
          throw ValidationError("line " + std::to_string(line_no) + ": bad delay '" + tok + "'");
        row.push_back(v);
      }
      i = j;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("delay matrix has no rows");
  return DelayMatrix(std::move(rows));
}

}  // namespace leosim
