#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leosim/dijkstra.hpp"
#include "leosim/error.hpp"
#include "leosim/topology.hpp"

namespace leosim {

enum class Algorithm { ilsr, ilpr, alpr, isasr };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::ilsr, Algorithm::ilpr, Algorithm::alpr, Algorithm::isasr};

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ilsr: return "ilsr";
    case Algorithm::ilpr: return "ilpr";
    case Algorithm::alpr: return "alpr";
    case Algorithm::isasr: return "isasr";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (auto a : kAllAlgorithms)
    if (to_string(a) == s) return a;
  throw ValidationError("unknown algorithm '" + std::string(s) + "'");
}

/// Active route per slot plus its end-to-end delay under the snapshot's
/// original edge delays. Index k holds slot k + 1.
struct RoutingSchedule {
  std::vector<std::optional<Route>> active;
  std::vector<std::optional<double>> delay_ms;
  std::size_t dijkstra_calls = 0;
  std::size_t pruned_edges = 0;

  explicit RoutingSchedule(int num_slots = 0)
      : active(static_cast<std::size_t>(num_slots)), delay_ms(static_cast<std::size_t>(num_slots)) {}

  [[nodiscard]] int num_slots() const { return static_cast<int>(active.size()); }
  [[nodiscard]] const std::optional<Route>& at(Slot i) const { return active.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] bool reachable(Slot i) const { return at(i).has_value(); }

  /// True iff routes exist on both sides of boundary (i, i + 1) and differ.
  [[nodiscard]] bool switch_at(Slot i) const {
    const auto& a = at(i);
    const auto& b = at(i + 1);
    return a && b && *a != *b;
  }

  void assign(Slot i, const Route& route, const Snapshot& snap) {
    const auto k = static_cast<std::size_t>(i - 1);
    active[k] = route;
    delay_ms[k] = route.delay_in(snap);
    if (!delay_ms[k]) throw VerificationError("slot " + std::to_string(i) + ": active route not in snapshot");
  }
};

inline void check_series_endpoints(const SnapshotSeries& series, NodeId src, NodeId dst) {
  detail::check_endpoints(series.roster, src, dst);
  if (!series.roster.is_ground(src) || !series.roster.is_ground(dst))
    throw ValidationError("route endpoints must be ground stations");
}

/// Benchmark: independent shortest route in every slot.
inline RoutingSchedule ilsr(const SnapshotSeries& series, NodeId src, NodeId dst) {
  check_series_endpoints(series, src, dst);
  RoutingSchedule sched(series.num_slots());
  for (const auto& snap : series.snapshots) {
    ++sched.dijkstra_calls;
    if (auto r = dijkstra(snap, series.roster, src, dst)) sched.assign(snap.slot(), *r, snap);
  }
  return sched;
}

/// Keeps the previous slot's route while all its edges survive; otherwise
/// recomputes the shortest route.
inline RoutingSchedule ilpr(const SnapshotSeries& series, NodeId src, NodeId dst) {
  check_series_endpoints(series, src, dst);
  RoutingSchedule sched(series.num_slots());
  const std::optional<Route>* prev = nullptr;
  for (const auto& snap : series.snapshots) {
    const Slot i = snap.slot();
    if (prev && *prev && (*prev)->exists_in(snap)) {
      sched.assign(i, **prev, snap);
    } else {
      ++sched.dijkstra_calls;
      if (auto r = dijkstra(snap, series.roster, src, dst)) sched.assign(i, *r, snap);
    }
    prev = &sched.at(i);
  }
  return sched;
}

/// Last slot of the uninterrupted stretch, starting at `i`, over which every
/// edge of `route` exists: the minimum over edges of their run ends.
inline Slot route_lifetime(const Route& route, const LinkDetails& details, Slot i) {
  Slot l = details.num_slots();
  for (const auto& e : route.edges()) {
    auto run = contiguous_run(details, e, i);
    if (!run || run->first > i)
      throw ValidationError("route " + route.to_string() + " does not exist at slot " + std::to_string(i));
    l = std::min(l, run->last);
  }
  return l;
}

/// (setup + sum of per-slot delays) / number of slots.
inline double average_latency_with_setup(std::span<const double> delays_ms, double eta_s_ms) {
  double sum = 0.0;
  for (double d : delays_ms) sum += d;
  return (eta_s_ms + sum) / static_cast<double>(delays_ms.size());
}

/// Lifetime-averaged latency of `route` from slot `i`, with one setup delay
/// charged over the whole lifetime. Looks ahead into future snapshots.
inline double alpr_average_latency(const Route& route, const LinkDetails& details, const SnapshotSeries& series,
                                   Slot i, double eta_s_ms) {
  const Slot l = route_lifetime(route, details, i);
  std::vector<double> delays;
  delays.reserve(static_cast<std::size_t>(l - i + 1));
  for (Slot k = i; k <= l; ++k) delays.push_back(*route.delay_in(series.at(k)));
  return average_latency_with_setup(delays, eta_s_ms);
}

/// Picks among edge-disjoint routes the one with least lifetime-averaged
/// latency (ties: fewer hops, then smaller vertex sequence) and holds it
/// until it expires.
inline RoutingSchedule alpr(const SnapshotSeries& series, const LinkDetails& details, NodeId src, NodeId dst,
                            double eta_s_ms) {
  check_series_endpoints(series, src, dst);
  RoutingSchedule sched(series.num_slots());
  Slot i = 1;
  while (i <= series.num_slots()) {
    const auto& snap = series.at(i);
    SlotGraph graph(snap, series.roster);
    auto candidates = disjoint_routes(graph, src, dst, &sched.dijkstra_calls);
    if (candidates.empty()) {
      ++i;
      continue;
    }
    const Route* best = nullptr;
    double best_avg = std::numeric_limits<double>::infinity();
    for (const auto& r : candidates) {
      const double avg = alpr_average_latency(r, details, series, i, eta_s_ms);
      const bool better = !best || avg < best_avg ||
                          (avg == best_avg && (r.hops() < best->hops() || (r.hops() == best->hops() && r < *best)));
      if (better) {
        best = &r;
        best_avg = avg;
      }
    }
    const Slot l = route_lifetime(*best, details, i);
    for (Slot k = i; k <= l; ++k) sched.assign(k, *best, series.at(k));
    i = l + 1;
  }
  return sched;
}

inline RoutingSchedule alpr(const SnapshotSeries& series, NodeId src, NodeId dst, double eta_s_ms) {
  return alpr(series, build_link_details(series), src, dst, eta_s_ms);
}

/// Stability cost of an edge at slot `i` given its run relative to `i`:
/// zero for edges lasting to the horizon, setup delay spread over the
/// remaining (or upcoming) run otherwise, infinite once expired.
inline double isasr_stability_cost(const std::optional<ContiguousRun>& run, Slot i, int num_slots, double eta_s_ms) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!run) return inf;
  const auto [f, l] = *run;
  if (l == num_slots) return 0.0;
  if (l < i) return inf;
  if (i < f) return eta_s_ms / static_cast<double>(l - f + 1);
  return eta_s_ms / static_cast<double>(l - i + 1);
}

/// Whether stability costs use the run around the current slot or the
/// edge's overall first/last appearance.
enum class LifetimeMode { per_run, global };

struct IsasrParams {
  double eta_s_ms = 1000.0;
  double gamma = 1000.0;
  double cost_thrsh_ms = 100.0;
  LifetimeMode lifetime = LifetimeMode::per_run;
  bool reset_dropped_edges = false;

  void validate() const {
    if (!(eta_s_ms >= 0.0)) throw ValidationError("eta_s must be >= 0");
    if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
    if (!(cost_thrsh_ms > 0.0)) throw ValidationError("cost_thrsh must be > 0");
  }
};

/// Per-edge activeness costs carried across slots, indexed like LinkDetails.
struct IsasrCostState {
  std::vector<double> cost_act;
  double gamma = 0.0;
  double cost_thrsh_ms = 0.0;
};

/// Slot-by-slot ISASR. Each step prunes unstable satellite-satellite edges,
/// reweights the rest with stability and activeness costs, routes on the
/// modified costs and then updates the activeness of the chosen edges.
class IsasrRouter {
 public:
  IsasrRouter(const SnapshotSeries& series, const LinkDetails& details, NodeId src, NodeId dst, IsasrParams params)
      : series_(series), details_(details), src_(src), dst_(dst), params_(params), sched_(series.num_slots()) {
    check_series_endpoints(series, src, dst);
    params_.validate();
    state_.cost_act.assign(details.size(), params_.eta_s_ms);
    state_.gamma = params_.gamma;
    state_.cost_thrsh_ms = params_.cost_thrsh_ms;
  }

  [[nodiscard]] bool done() const { return next_ > series_.num_slots(); }
  [[nodiscard]] Slot next_slot() const { return next_; }
  [[nodiscard]] const IsasrCostState& state() const { return state_; }
  [[nodiscard]] const LinkDetails& details() const { return details_; }

  [[nodiscard]] double stability_cost(std::size_t edge_idx, Slot i) const {
    const int n = series_.num_slots();
    if (params_.lifetime == LifetimeMode::global)
      return isasr_stability_cost(details_.global_lifetime(edge_idx), i, n, params_.eta_s_ms);
    return isasr_stability_cost(details_.run_at(edge_idx, i), i, n, params_.eta_s_ms);
  }

  /// Routes the next slot and returns its route (nullopt if unreachable).
  std::optional<Route> step() {
    const Slot i = next_++;
    const auto& snap = series_.at(i);
    const auto& links = snap.links();
    const bool prune = std::isfinite(params_.cost_thrsh_ms);

    std::vector<double> cost(links.size());
    std::vector<std::size_t> edge_idx(links.size());
    for (std::size_t j = 0; j < links.size(); ++j) {
      const auto idx = details_.index_of(links[j].key);
      if (!idx) throw ValidationError("link details do not cover the series");
      edge_idx[j] = *idx;
      const double st = stability_cost(*idx, i);
      const bool sat_sat = series_.roster.is_satellite(links[j].key.u) && series_.roster.is_satellite(links[j].key.v);
      if (prune && sat_sat && st >= params_.cost_thrsh_ms) {
        cost[j] = std::numeric_limits<double>::infinity();
        ++sched_.pruned_edges;
        continue;
      }
      cost[j] = links[j].delay_ms;
      if (params_.gamma != 0.0) cost[j] += params_.gamma * (st + state_.cost_act[*idx]);
    }

    SlotGraph graph(snap, series_.roster);
    ++sched_.dijkstra_calls;
    auto route = shortest_route(graph, src_, dst_, cost);
    if (!route) {
      prev_.reset();
      return std::nullopt;
    }
    sched_.assign(i, *route, snap);

    const Slot break_point = route_lifetime(*route, details_, i);
    const auto edges = route->edges();
    for (const auto& e : edges)
      state_.cost_act[*details_.index_of(e)] = (i != break_point) ? 0.0 : params_.eta_s_ms;
    if (params_.reset_dropped_edges && prev_) {
      for (const auto& e : prev_->edges())
        if (std::find(edges.begin(), edges.end(), e) == edges.end())
          state_.cost_act[*details_.index_of(e)] = params_.eta_s_ms;
    }
    prev_ = route;
    return route;
  }

  RoutingSchedule run() {
    while (!done()) step();
    return sched_;
  }

  [[nodiscard]] const RoutingSchedule& schedule() const { return sched_; }

 private:
  const SnapshotSeries& series_;
  const LinkDetails& details_;
  NodeId src_;
  NodeId dst_;
  IsasrParams params_;
  IsasrCostState state_;
  RoutingSchedule sched_;
  std::optional<Route> prev_;
  Slot next_ = 1;
};

inline RoutingSchedule isasr(const SnapshotSeries& series, const LinkDetails& details, NodeId src, NodeId dst,
                             const IsasrParams& params) {
  return IsasrRouter(series, details, src, dst, params).run();
}

/// Parameters shared by every algorithm in one experiment cell.
struct RunParams {
  double eta_s_ms = 1000.0;
  std::optional<double> gamma;  // nullopt: gamma = eta_s
  double cost_thrsh_ms = 100.0;
  LifetimeMode lifetime = LifetimeMode::per_run;
  bool reset_dropped_edges = false;

  [[nodiscard]] IsasrParams isasr() const {
    return {eta_s_ms, gamma.value_or(eta_s_ms), cost_thrsh_ms, lifetime, reset_dropped_edges};
  }
};

inline RoutingSchedule run_algorithm(Algorithm algo, const SnapshotSeries& series, const LinkDetails& details,
                                     NodeId src, NodeId dst, const RunParams& params) {
  switch (algo) {
    case Algorithm::ilsr: return ilsr(series, src, dst);
    case Algorithm::ilpr: return ilpr(series, src, dst);
    case Algorithm::alpr: return alpr(series, details, src, dst, params.eta_s_ms);
    case Algorithm::isasr: return isasr(series, details, src, dst, params.isasr());
  }
  throw ValidationError("unknown algorithm");
}

}  // namespace leosim
