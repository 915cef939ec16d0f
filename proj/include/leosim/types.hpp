#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <system_error>
#include <vector>

#include "leosim/error.hpp"

namespace leosim {

/// Dense node identifier. Satellites occupy [0, num_satellites); ground
/// stations follow consecutively.
using NodeId = std::uint32_t;

/// 1-based time-slot index.
using Slot = int;

/// Undirected edge stored canonically as (min id, max id).
struct EdgeKey {
  NodeId u = 0;
  NodeId v = 0;

  static EdgeKey of(NodeId a, NodeId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct GroundStation {
  NodeId id = 0;
  std::string name;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;

  void validate() const {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
      throw ValidationError("ground station '" + name + "': latitude out of [-90, 90]");
    if (!(longitude_deg > -180.0 && longitude_deg <= 180.0))
      throw ValidationError("ground station '" + name + "': longitude out of (-180, 180]");
  }
};

struct ScenarioParams {
  double lisl_range_km = 1500.0;
  double gs_range_km = 1000.0;
  double node_delay_ms = 1.0;
  double slot_duration_s = 1.0;
  int num_slots = 600;

  void validate() const {
    if (!(lisl_range_km > 0.0)) throw ValidationError("lisl_range must be > 0");
    if (!(gs_range_km > 0.0)) throw ValidationError("gs_range must be > 0");
    if (!(node_delay_ms >= 0.0)) throw ValidationError("node_delay must be >= 0");
    if (!(slot_duration_s > 0.0)) throw ValidationError("slot_duration must be > 0");
    if (num_slots < 1) throw ValidationError("num_slots must be >= 1");
  }

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// The node population of a series: satellite count plus ground stations
/// with ids num_satellites, num_satellites + 1, ...
struct Roster {
  std::size_t num_satellites = 0;
  std::vector<GroundStation> ground;

  [[nodiscard]] std::size_t num_nodes() const { return num_satellites + ground.size(); }
  [[nodiscard]] bool contains(NodeId n) const { return n < num_nodes(); }
  [[nodiscard]] bool is_satellite(NodeId n) const { return n < num_satellites; }
  [[nodiscard]] bool is_ground(NodeId n) const { return n >= num_satellites && n < num_nodes(); }

  [[nodiscard]] const GroundStation& station(NodeId n) const { return ground.at(n - num_satellites); }

  [[nodiscard]] NodeId find_station(const std::string& name) const {
    for (const auto& gs : ground)
      if (gs.name == name) return gs.id;
    throw ValidationError("unknown ground station '" + name + "'");
  }

  /// Appends a station and assigns it the next free id.
  NodeId add_station(std::string name, double lat_deg, double lon_deg) {
    GroundStation gs{static_cast<NodeId>(num_nodes()), std::move(name), lat_deg, lon_deg};
    gs.validate();
    ground.push_back(std::move(gs));
    return ground.back().id;
  }

  void validate() const {
    for (std::size_t k = 0; k < ground.size(); ++k) {
      if (ground[k].id != num_satellites + k)
        throw ValidationError("ground station ids must follow satellite ids consecutively");
      ground[k].validate();
    }
  }

  friend bool operator==(const Roster& a, const Roster& b) {
    if (a.num_satellites != b.num_satellites || a.ground.size() != b.ground.size()) return false;
    for (std::size_t k = 0; k < a.ground.size(); ++k) {
      const auto& x = a.ground[k];
      const auto& y = b.ground[k];
      if (x.id != y.id || x.name != y.name || x.latitude_deg != y.latitude_deg ||
          x.longitude_deg != y.longitude_deg)
        return false;
    }
    return true;
  }
};

inline constexpr int kDelayDigits = 9;

/// Rounds a delay to the fixed-point decimal form used on disk, so that
/// generated and re-imported series compare bit-identical.
inline double quantize_delay(double ms) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, ms, std::chars_format::fixed, kDelayDigits);
  if (ec != std::errc{}) return ms;
  double out = 0.0;
  std::from_chars(buf, end, out);
  return out;
}

inline std::string format_delay(double ms) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, ms, std::chars_format::fixed, kDelayDigits);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

}  // namespace leosim
