#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/topology.hpp"
#include "leosim/types.hpp"

// Snapshot series text format (UTF-8, one record per line, '#' comments):
//
//   leosim-series 1
//   scenario <lisl_km> <gs_km> <node_delay_ms> <slot_s> <num_slots>
//   satellites <count>
//   ground <id> <name> <lat_deg> <lon_deg>        (zero or more)
//   slot <i> <edge_count>                         (for i = 1..N)
//   <i> <u> <v> <delay_ms>                        (edge_count records, u < v)
//
// Delays carry exactly nine fractional digits.

namespace leosim {

namespace detail {

inline std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line_no, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ValidationError("line " + std::to_string(line_no) + ": bad " + std::string(what) + " '" +
                          std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline void export_series(const SnapshotSeries& series, std::ostream& out) {
  using detail::shortest;
  const auto& sc = series.scenario;
  out << "leosim-series 1\n";
  out << "scenario " << shortest(sc.lisl_range_km) << ' ' << shortest(sc.gs_range_km) << ' '
      << shortest(sc.node_delay_ms) << ' ' << shortest(sc.slot_duration_s) << ' ' << sc.num_slots << '\n';
  out << "satellites " << series.roster.num_satellites << '\n';
  for (const auto& gs : series.roster.ground) {
    if (gs.name.empty() || gs.name.find_first_of(" \t\r\n#") != std::string::npos)
      throw ValidationError("ground station name '" + gs.name + "' is not a single token");
    out << "ground " << gs.id << ' ' << gs.name << ' ' << shortest(gs.latitude_deg) << ' '
        << shortest(gs.longitude_deg) << '\n';
  }
  for (const auto& snap : series.snapshots) {
    out << "slot " << snap.slot() << ' ' << snap.size() << '\n';
    for (const auto& l : snap.links())
      out << snap.slot() << ' ' << l.key.u << ' ' << l.key.v << ' ' << format_delay(l.delay_ms) << '\n';
  }
}

/// Parses and fully validates a series; never returns a partial result.
inline SnapshotSeries import_series(std::istream& in) {
  using detail::parse_number;
  std::string line;
  std::size_t line_no = 0;
  auto next_record = [&](std::vector<std::string_view>& toks) {
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      std::string_view view(line);
      if (hash != std::string::npos) view = view.substr(0, hash);
      toks = detail::split_ws(view);
      if (!toks.empty()) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) -> ValidationError {
    return ValidationError("line " + std::to_string(line_no) + ": " + msg);
  };

  std::vector<std::string_view> t;
  if (!next_record(t) || t.size() != 2 || t[0] != "leosim-series" || t[1] != "1")
    throw fail("missing 'leosim-series 1' header");

  ScenarioParams sc;
  if (!next_record(t) || t.size() != 6 || t[0] != "scenario") throw fail("expected scenario record");
  sc.lisl_range_km = parse_number<double>(t[1], line_no, "lisl range");
  sc.gs_range_km = parse_number<double>(t[2], line_no, "gs range");
  sc.node_delay_ms = parse_number<double>(t[3], line_no, "node delay");
  sc.slot_duration_s = parse_number<double>(t[4], line_no, "slot duration");
  sc.num_slots = parse_number<int>(t[5], line_no, "slot count");
  sc.validate();

  Roster roster;
  if (!next_record(t) || t.size() != 2 || t[0] != "satellites") throw fail("expected satellites record");
  roster.num_satellites = parse_number<std::size_t>(t[1], line_no, "satellite count");

  std::vector<Snapshot> snapshots;
  bool have_record = next_record(t);
  while (have_record && t[0] == "ground") {
    if (t.size() != 5) throw fail("ground record needs id, name, lat, lon");
    GroundStation gs{parse_number<NodeId>(t[1], line_no, "node id"), std::string(t[2]),
                     parse_number<double>(t[3], line_no, "latitude"),
                     parse_number<double>(t[4], line_no, "longitude")};
    if (gs.id != roster.num_nodes()) throw fail("ground station ids must follow satellite ids consecutively");
    gs.validate();
    roster.ground.push_back(std::move(gs));
    have_record = next_record(t);
  }

  while (have_record) {
    if (t[0] != "slot" || t.size() != 3) throw fail("expected slot record");
    const Slot slot = parse_number<Slot>(t[1], line_no, "slot");
    const Slot expected = static_cast<Slot>(snapshots.size() + 1);
    if (slot < expected) throw fail("out-of-order slots");
    if (slot != expected) throw fail("non-consecutive slots");
    const auto count = parse_number<std::size_t>(t[2], line_no, "edge count");
    std::vector<Link> links;
    links.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!next_record(t)) throw fail("truncated slot " + std::to_string(slot));
      if (t.size() != 4) throw fail("edge record needs slot, u, v, delay");
      const Slot s = parse_number<Slot>(t[0], line_no, "slot");
      if (s != slot) throw fail("out-of-order slots");
      const auto u = parse_number<NodeId>(t[1], line_no, "node id");
      const auto v = parse_number<NodeId>(t[2], line_no, "node id");
      const auto d = parse_number<double>(t[3], line_no, "delay");
      if (!roster.contains(u) || !roster.contains(v))
        throw fail("unknown node id in edge " + std::to_string(u) + "-" + std::to_string(v));
      if (!(d > 0.0)) throw fail("non-positive delay");
      links.push_back({EdgeKey::of(u, v), d});
    }
    snapshots.emplace_back(slot, std::move(links));
    have_record = next_record(t);
  }
  return SnapshotSeries::make(sc, std::move(roster), std::move(snapshots));
}

inline void export_series_file(const SnapshotSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  export_series(series, out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline SnapshotSeries import_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return import_series(in);
}

}  // namespace leosim
