#pragma once

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/geometry.hpp"
#include "leosim/topology.hpp"
#include "leosim/types.hpp"

namespace leosim {

/// Walker-Delta shell on circular orbits.
struct ConstellationParams {
  int num_planes = 24;
  int sats_per_plane = 66;
  double inclination_deg = 53.0;
  double altitude_km = 550.0;
  int phasing_factor = 0;
  double epoch_raan_offset_deg = 0.0;

  void validate() const {
    if (num_planes < 1) throw ValidationError("num_planes must be >= 1");
    if (sats_per_plane < 1) throw ValidationError("sats_per_plane must be >= 1");
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0))
      throw ValidationError("inclination must be within [0, 180] degrees");
    if (!(altitude_km > 0.0)) throw ValidationError("altitude must be > 0");
  }

  [[nodiscard]] std::size_t num_satellites() const {
    return static_cast<std::size_t>(num_planes) * static_cast<std::size_t>(sats_per_plane);
  }
  [[nodiscard]] double orbit_radius_km() const { return kEarthRadiusKm + altitude_km; }
  [[nodiscard]] double mean_motion_rad_s() const {
    const double r = orbit_radius_km();
    return std::sqrt(kEarthMuKm3PerS2 / (r * r * r));
  }
  [[nodiscard]] double orbital_speed_km_s() const { return std::sqrt(kEarthMuKm3PerS2 / orbit_radius_km()); }
  [[nodiscard]] double period_s() const { return 2.0 * std::numbers::pi / mean_motion_rad_s(); }
};

enum class NodeKind { satellite, ground };

struct BodyState {
  NodeId id = 0;
  NodeKind kind = NodeKind::satellite;
  Vec3 position;  // km, Earth-centred inertial
  Slot slot = 1;
};

inline double slot_time_s(Slot slot, double slot_duration_s) { return (slot - 1) * slot_duration_s; }

/// Satellite states at `slot`; satellite s of plane p gets id p * sats_per_plane + s.
inline std::vector<BodyState> propagate(const ConstellationParams& params, Slot slot, double slot_duration_s) {
  const double r = params.orbit_radius_km();
  const double n = params.mean_motion_rad_s();
  const double t = slot_time_s(slot, slot_duration_s);
  const double inc = deg_to_rad(params.inclination_deg);
  const double cos_i = std::cos(inc);
  const double sin_i = std::sin(inc);
  const double total = static_cast<double>(params.num_satellites());

  std::vector<BodyState> out;
  out.reserve(params.num_satellites());
  for (int p = 0; p < params.num_planes; ++p) {
    const double raan = deg_to_rad(params.epoch_raan_offset_deg + p * 360.0 / params.num_planes);
    const double cos_o = std::cos(raan);
    const double sin_o = std::sin(raan);
    for (int s = 0; s < params.sats_per_plane; ++s) {
      const double phase_deg = s * 360.0 / params.sats_per_plane + p * params.phasing_factor * 360.0 / total;
      const double u = deg_to_rad(phase_deg) + n * t;
      const double cu = std::cos(u);
      const double su = std::sin(u);
      Vec3 pos{r * (cos_o * cu - sin_o * su * cos_i), r * (sin_o * cu + cos_o * su * cos_i), r * (su * sin_i)};
      out.push_back({static_cast<NodeId>(p * params.sats_per_plane + s), NodeKind::satellite, pos, slot});
    }
  }
  return out;
}

/// Ground station on a spherical Earth rotating at the sidereal rate; the
/// inertial and Earth-fixed frames coincide at slot 1.
inline BodyState ground_station_state(const GroundStation& gs, Slot slot, double slot_duration_s) {
  const double theta = 2.0 * std::numbers::pi * slot_time_s(slot, slot_duration_s) / kSiderealDaySeconds;
  const double lat = deg_to_rad(gs.latitude_deg);
  const double lon = deg_to_rad(gs.longitude_deg) + theta;
  Vec3 pos{kEarthRadiusKm * std::cos(lat) * std::cos(lon), kEarthRadiusKm * std::cos(lat) * std::sin(lon),
           kEarthRadiusKm * std::sin(lat)};
  return {gs.id, NodeKind::ground, pos, slot};
}

/// Delay of one edge in ms: propagation at c plus the per-node delay.
inline double edge_delay_ms(double distance_km, double node_delay_ms) {
  return distance_km / kSpeedOfLightKmPerS * 1000.0 + node_delay_ms;
}

/// Range-gated edges between the given bodies. Satellite pairs use the LISL
/// range, satellite-ground pairs the GS range (both inclusive); ground pairs
/// never connect.
inline Snapshot build_snapshot(const std::vector<BodyState>& states, const ScenarioParams& scenario) {
  const Slot slot = states.empty() ? 1 : states.front().slot;
  const double lisl_sq = scenario.lisl_range_km * scenario.lisl_range_km;
  const double gs_sq = scenario.gs_range_km * scenario.gs_range_km;
  std::vector<Link> links;
  for (std::size_t a = 0; a < states.size(); ++a) {
    const auto& sa = states[a];
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      const auto& sb = states[b];
      const bool both_sat = sa.kind == NodeKind::satellite && sb.kind == NodeKind::satellite;
      const bool both_gs = sa.kind == NodeKind::ground && sb.kind == NodeKind::ground;
      if (both_gs) continue;
      const double range_sq = both_sat ? lisl_sq : gs_sq;
      const double d_sq = (sa.position - sb.position).norm_sq();
      if (d_sq > range_sq) continue;
      const double d = std::sqrt(d_sq);
      if (d > (both_sat ? scenario.lisl_range_km : scenario.gs_range_km)) continue;
      links.push_back({EdgeKey::of(sa.id, sb.id), quantize_delay(edge_delay_ms(d, scenario.node_delay_ms))});
    }
  }
  return Snapshot(slot, std::move(links));
}

/// Roster matching a constellation plus the given stations (ids reassigned).
inline Roster make_roster(const ConstellationParams& params, const std::vector<GroundStation>& stations) {
  Roster roster;
  roster.num_satellites = params.num_satellites();
  for (const auto& gs : stations) roster.add_station(gs.name, gs.latitude_deg, gs.longitude_deg);
  return roster;
}

inline std::vector<BodyState> slot_states(const ConstellationParams& params, const Roster& roster,
                                          Slot slot, double slot_duration_s) {
  auto states = propagate(params, slot, slot_duration_s);
  for (const auto& gs : roster.ground) states.push_back(ground_station_state(gs, slot, slot_duration_s));
  return states;
}

/// Generates all N snapshots. Slots are independent, so they are split
/// across `workers` threads; the result does not depend on the worker count.
inline SnapshotSeries generate_series(const ConstellationParams& params, const ScenarioParams& scenario,
                                      const std::vector<GroundStation>& stations, unsigned workers = 1) {
  params.validate();
  scenario.validate();
  Roster roster = make_roster(params, stations);
  std::vector<Snapshot> snapshots(static_cast<std::size_t>(scenario.num_slots));
  auto work = [&](unsigned w, unsigned stride) {
    for (std::size_t k = w; k < snapshots.size(); k += stride) {
      const Slot slot = static_cast<Slot>(k + 1);
      snapshots[k] = build_snapshot(slot_states(params, roster, slot, scenario.slot_duration_s), scenario);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  return SnapshotSeries::make(scenario, std::move(roster), std::move(snapshots));
}

}  // namespace leosim
