#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/types.hpp"

namespace leosim {

struct Link {
  EdgeKey key;
  double delay_ms = 0.0;

  friend bool operator==(const Link&, const Link&) = default;
};

/// The feasible edges of one time slot, sorted by canonical key.
class Snapshot {
 public:
  Snapshot() = default;

  Snapshot(Slot slot, std::vector<Link> links) : slot_(slot), links_(std::move(links)) {
    for (auto& l : links_) {
      if (l.key.u == l.key.v)
        throw ValidationError("slot " + std::to_string(slot_) + ": self-loop on node " +
                              std::to_string(l.key.u));
      l.key = EdgeKey::of(l.key.u, l.key.v);
      if (!std::isfinite(l.delay_ms) || !(l.delay_ms > 0.0))
        throw ValidationError("slot " + std::to_string(slot_) + ": non-positive delay on edge " +
                              std::to_string(l.key.u) + "-" + std::to_string(l.key.v));
    }
    std::sort(links_.begin(), links_.end(), [](const Link& a, const Link& b) { return a.key < b.key; });
    auto dup = std::adjacent_find(links_.begin(), links_.end(),
                                  [](const Link& a, const Link& b) { return a.key == b.key; });
    if (dup != links_.end())
      throw ValidationError("slot " + std::to_string(slot_) + ": duplicate edge " +
                            std::to_string(dup->key.u) + "-" + std::to_string(dup->key.v));
  }

  [[nodiscard]] Slot slot() const { return slot_; }
  [[nodiscard]] const std::vector<Link>& links() const { return links_; }
  [[nodiscard]] std::size_t size() const { return links_.size(); }

  [[nodiscard]] std::optional<std::size_t> index_of(EdgeKey key) const {
    auto it = std::lower_bound(links_.begin(), links_.end(), key,
                               [](const Link& l, const EdgeKey& k) { return l.key < k; });
    if (it == links_.end() || it->key != key) return std::nullopt;
    return static_cast<std::size_t>(it - links_.begin());
  }

  [[nodiscard]] bool contains(EdgeKey key) const { return index_of(key).has_value(); }

  [[nodiscard]] std::optional<double> delay(EdgeKey key) const {
    if (auto idx = index_of(key)) return links_[*idx].delay_ms;
    return std::nullopt;
  }

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  Slot slot_ = 0;
  std::vector<Link> links_;
};

/// N consecutive snapshots over a fixed node roster.
struct SnapshotSeries {
  ScenarioParams scenario;
  Roster roster;
  std::vector<Snapshot> snapshots;

  [[nodiscard]] int num_slots() const { return static_cast<int>(snapshots.size()); }
  [[nodiscard]] const Snapshot& at(Slot slot) const { return snapshots.at(static_cast<std::size_t>(slot - 1)); }

  /// Checks every series invariant; throws ValidationError with a
  /// diagnostic naming the first violation.
  void validate() const {
    scenario.validate();
    roster.validate();
    if (snapshots.size() != static_cast<std::size_t>(scenario.num_slots))
      throw ValidationError("expected " + std::to_string(scenario.num_slots) + " snapshots, got " +
                            std::to_string(snapshots.size()));
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
      const auto& snap = snapshots[k];
      if (snap.slot() != static_cast<Slot>(k + 1)) throw ValidationError("non-consecutive slots");
      for (const auto& l : snap.links()) {
        if (!roster.contains(l.key.u) || !roster.contains(l.key.v))
          throw ValidationError("slot " + std::to_string(snap.slot()) + ": unknown node id in edge " +
                                std::to_string(l.key.u) + "-" + std::to_string(l.key.v));
        if (roster.is_ground(l.key.u) && roster.is_ground(l.key.v))
          throw ValidationError("slot " + std::to_string(snap.slot()) + ": ground-to-ground edge " +
                                std::to_string(l.key.u) + "-" + std::to_string(l.key.v));
      }
    }
  }

  static SnapshotSeries make(ScenarioParams scenario, Roster roster, std::vector<Snapshot> snapshots) {
    SnapshotSeries s{scenario, std::move(roster), std::move(snapshots)};
    s.validate();
    return s;
  }

  friend bool operator==(const SnapshotSeries&, const SnapshotSeries&) = default;
};

/// First and last slot of a maximal run of consecutive slots.
struct ContiguousRun {
  Slot first = 0;
  Slot last = 0;

  friend bool operator==(const ContiguousRun&, const ContiguousRun&) = default;
};

/// Inverse index of edge existence: for each edge, the sorted slots in which
/// it is present, plus the maximal consecutive runs over those slots.
class LinkDetails {
 public:
  struct Entry {
    EdgeKey key;
    std::vector<Slot> slots;
    std::vector<ContiguousRun> runs;
  };

  static LinkDetails build(const SnapshotSeries& series) {
    std::unordered_map<std::uint64_t, std::vector<Slot>> index;
    for (const auto& snap : series.snapshots)
      for (const auto& l : snap.links()) index[pack(l.key)].push_back(snap.slot());

    LinkDetails d;
    d.num_slots_ = series.num_slots();
    d.entries_.reserve(index.size());
    for (auto& [packed, slots] : index) {
      Entry e{unpack(packed), std::move(slots), {}};
      for (Slot s : e.slots) {
        if (!e.runs.empty() && e.runs.back().last + 1 == s)
          e.runs.back().last = s;
        else
          e.runs.push_back({s, s});
      }
      d.entries_.push_back(std::move(e));
    }
    std::sort(d.entries_.begin(), d.entries_.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    return d;
  }

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] int num_slots() const { return num_slots_; }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] const Entry& entry(std::size_t idx) const { return entries_[idx]; }

  [[nodiscard]] std::optional<std::size_t> index_of(EdgeKey key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, const EdgeKey& k) { return e.key < k; });
    if (it == entries_.end() || it->key != key) return std::nullopt;
    return static_cast<std::size_t>(it - entries_.begin());
  }

  /// The run containing `slot`, else the next run starting after it.
  [[nodiscard]] std::optional<ContiguousRun> run_at(std::size_t idx, Slot slot) const {
    const auto& runs = entries_[idx].runs;
    auto it = std::lower_bound(runs.begin(), runs.end(), slot,
                               [](const ContiguousRun& r, Slot s) { return r.last < s; });
    if (it == runs.end()) return std::nullopt;
    return *it;
  }

  /// First and last slot the edge ever exists, ignoring gaps.
  [[nodiscard]] ContiguousRun global_lifetime(std::size_t idx) const {
    const auto& slots = entries_[idx].slots;
    return {slots.front(), slots.back()};
  }

 private:
  static std::uint64_t pack(EdgeKey k) { return (static_cast<std::uint64_t>(k.u) << 32) | k.v; }
  static EdgeKey unpack(std::uint64_t p) {
    return {static_cast<NodeId>(p >> 32), static_cast<NodeId>(p & 0xffffffffu)};
  }

  int num_slots_ = 0;
  std::vector<Entry> entries_;
};

inline LinkDetails build_link_details(const SnapshotSeries& series) { return LinkDetails::build(series); }

/// Maximal run of the edge containing `slot`, else the next-following run;
/// nullopt when the edge never exists at or after `slot`.
inline std::optional<ContiguousRun> contiguous_run(const LinkDetails& details, EdgeKey edge, Slot slot) {
  auto idx = details.index_of(edge);
  if (!idx) return std::nullopt;
  return details.run_at(*idx, slot);
}

}  // namespace leosim
