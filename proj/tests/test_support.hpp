#pragma once

#include <initializer_list>
#include <tuple>
#include <vector>

#include "leosim/leosim.hpp"

namespace leosim::testing {

using EdgeSpec = std::tuple<NodeId, NodeId, double>;

/// Series over `sats` satellites and ground stations named G1, G2, ...
/// (ids sats, sats + 1, ...), one edge list per slot.
inline SnapshotSeries make_series(std::size_t sats, std::size_t stations,
                                  const std::vector<std::vector<EdgeSpec>>& slots) {
  ScenarioParams sc;
  sc.num_slots = static_cast<int>(slots.size());
  Roster roster;
  roster.num_satellites = sats;
  for (std::size_t k = 0; k < stations; ++k) roster.add_station("G" + std::to_string(k + 1), 0.0, 0.0);
  std::vector<Snapshot> snaps;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::vector<Link> links;
    for (const auto& [u, v, d] : slots[i]) links.push_back({EdgeKey::of(u, v), d});
    snaps.emplace_back(static_cast<Slot>(i + 1), std::move(links));
  }
  return SnapshotSeries::make(sc, std::move(roster), std::move(snaps));
}

// Square graph: satellites A = 0, B = 1; stations G1 = 2, G2 = 3.
inline constexpr NodeId A = 0, B = 1, G1 = 2, G2 = 3;

inline std::vector<EdgeSpec> square(double via_a, double via_b) {
  return {{G1, A, via_a / 2}, {A, G2, via_a / 2}, {G1, B, via_b / 2}, {B, G2, via_b / 2}};
}

/// Small constellation with enough range that 50 satellites stay meshed.
inline ExperimentConfig toy_config() {
  ExperimentConfig c;
  c.constellation = {5, 10, 53.0, 1200.0, 1, 0.0};
  c.scenario = {5000.0, 3000.0, 1.0, 10.0, 100};
  c.stations = {{0, "NewYork", 40.7128, -74.0060}, {0, "London", 51.5074, -0.1278}};
  return c;
}

}  // namespace leosim::testing
