#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/topology.hpp"
#include "leosim/types.hpp"

namespace leosim {

/// A simple path between two ground stations, as its vertex sequence.
/// Two routes are the same route iff their vertex sequences are equal.
struct Route {
  std::vector<NodeId> nodes;

  [[nodiscard]] std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  [[nodiscard]] NodeId source() const { return nodes.front(); }
  [[nodiscard]] NodeId target() const { return nodes.back(); }

  [[nodiscard]] std::vector<EdgeKey> edges() const {
    std::vector<EdgeKey> out;
    for (std::size_t z = 1; z < nodes.size(); ++z) out.push_back(EdgeKey::of(nodes[z - 1], nodes[z]));
    return out;
  }

  [[nodiscard]] bool exists_in(const Snapshot& snap) const {
    for (std::size_t z = 1; z < nodes.size(); ++z)
      if (!snap.contains(EdgeKey::of(nodes[z - 1], nodes[z]))) return false;
    return true;
  }

  /// End-to-end delay in `snap`, summed source to target; nullopt if any
  /// edge is missing.
  [[nodiscard]] std::optional<double> delay_in(const Snapshot& snap) const {
    double total = 0.0;
    for (std::size_t z = 1; z < nodes.size(); ++z) {
      auto d = snap.delay(EdgeKey::of(nodes[z - 1], nodes[z]));
      if (!d) return std::nullopt;
      total += *d;
    }
    return total;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (std::size_t z = 0; z < nodes.size(); ++z) {
      if (z) s += '-';
      s += std::to_string(nodes[z]);
    }
    return s;
  }

  friend auto operator<=>(const Route&, const Route&) = default;
  friend bool operator==(const Route&, const Route&) = default;
};

/// Compressed adjacency over one snapshot. Each arc carries the index of its
/// link in the snapshot, so per-edge cost vectors are indexed the same way.
class SlotGraph {
 public:
  struct Arc {
    NodeId to;
    std::uint32_t link;
  };

  SlotGraph(const Snapshot& snap, const Roster& roster) : snap_(&snap), roster_(&roster) {
    const std::size_t n = roster.num_nodes();
    offsets_.assign(n + 1, 0);
    for (const auto& l : snap.links()) {
      ++offsets_[l.key.u + 1];
      ++offsets_[l.key.v + 1];
    }
    for (std::size_t k = 0; k < n; ++k) offsets_[k + 1] += offsets_[k];
    arcs_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    const auto& links = snap.links();
    for (std::uint32_t li = 0; li < links.size(); ++li) {
      arcs_[fill[links[li].key.u]++] = {links[li].key.v, li};
      arcs_[fill[links[li].key.v]++] = {links[li].key.u, li};
    }
  }

  [[nodiscard]] const Snapshot& snapshot() const { return *snap_; }
  [[nodiscard]] const Roster& roster() const { return *roster_; }
  [[nodiscard]] std::size_t num_nodes() const { return offsets_.size() - 1; }
  [[nodiscard]] std::size_t degree(NodeId n) const { return offsets_[n + 1] - offsets_[n]; }
  [[nodiscard]] std::span<const Arc> arcs(NodeId n) const {
    return {arcs_.data() + offsets_[n], arcs_.data() + offsets_[n + 1]};
  }

  /// The snapshot's delays, indexed by link.
  [[nodiscard]] std::vector<double> delays() const {
    std::vector<double> out;
    out.reserve(snap_->size());
    for (const auto& l : snap_->links()) out.push_back(l.delay_ms);
    return out;
  }

 private:
  const Snapshot* snap_;
  const Roster* roster_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

namespace detail {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

inline std::vector<NodeId> path_to(const std::vector<NodeId>& pred, NodeId v) {
  std::vector<NodeId> path;
  for (NodeId x = v; x != kNoNode; x = pred[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

inline void check_endpoints(const Roster& roster, NodeId src, NodeId dst) {
  if (!roster.contains(src) || !roster.contains(dst)) throw ValidationError("route endpoint not in roster");
  if (src == dst) throw ValidationError("route source and destination must differ");
}

}  // namespace detail

/// Binary-heap Dijkstra over `cost` (one entry per snapshot link, strictly
/// positive; +inf removes the link). Ground stations other than `src` are
/// never used as transit vertices. Among equal-cost paths the one whose
/// vertex sequence is lexicographically smallest wins.
inline std::optional<Route> shortest_route(const SlotGraph& graph, NodeId src, NodeId dst,
                                           std::span<const double> cost) {
  detail::check_endpoints(graph.roster(), src, dst);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = graph.num_nodes();
  std::vector<double> dist(n, inf);
  std::vector<NodeId> pred(n, detail::kNoNode);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  dist[src] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d > dist[u]) continue;
    done[u] = 1;
    if (u == dst) break;
    if (u != src && graph.roster().is_ground(u)) continue;
    for (const auto& arc : graph.arcs(u)) {
      const double c = cost[arc.link];
      if (!std::isfinite(c) || done[arc.to]) continue;
      const double nd = d + c;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        pred[arc.to] = u;
        heap.push({nd, arc.to});
      } else if (nd == dist[arc.to]) {
        auto candidate = detail::path_to(pred, u);
        candidate.push_back(arc.to);
        if (candidate < detail::path_to(pred, arc.to)) pred[arc.to] = u;
      }
    }
  }
  if (!done[dst]) return std::nullopt;
  return Route{detail::path_to(pred, dst)};
}

/// Shortest route in one snapshot, by edge delay or by an override cost
/// vector indexed like `snap.links()`.
inline std::optional<Route> dijkstra(const Snapshot& snap, const Roster& roster, NodeId src, NodeId dst,
                                     const std::vector<double>* cost_override = nullptr) {
  SlotGraph graph(snap, roster);
  if (cost_override) {
    if (cost_override->size() != snap.size()) throw ValidationError("cost override size mismatch");
    return shortest_route(graph, src, dst, *cost_override);
  }
  return shortest_route(graph, src, dst, graph.delays());
}

/// Edge-disjoint routes by successive shortest-route extraction and removal,
/// at most min(deg(src), deg(dst)) of them.
inline std::vector<Route> disjoint_routes(const SlotGraph& graph, NodeId src, NodeId dst,
                                          std::size_t* dijkstra_calls = nullptr) {
  detail::check_endpoints(graph.roster(), src, dst);
  const std::size_t bound = std::min(graph.degree(src), graph.degree(dst));
  auto cost = graph.delays();
  std::vector<Route> out;
  for (std::size_t j = 0; j < bound; ++j) {
    if (dijkstra_calls) ++*dijkstra_calls;
    auto route = shortest_route(graph, src, dst, cost);
    if (!route) break;
    for (const auto& e : route->edges()) cost[*graph.snapshot().index_of(e)] = std::numeric_limits<double>::infinity();
    out.push_back(std::move(*route));
  }
  return out;
}

inline std::vector<Route> disjoint_routes(const Snapshot& snap, const Roster& roster, NodeId src, NodeId dst) {
  return disjoint_routes(SlotGraph(snap, roster), src, dst);
}

}  // namespace leosim
