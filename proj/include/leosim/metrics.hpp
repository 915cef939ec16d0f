#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/matrices.hpp"
#include "leosim/routing.hpp"

namespace leosim {

/// Algorithm-independent view of a selection: the active route's delay per
/// slot (nullopt when no route exists) and whether the active route changed
/// coming into each slot. Boundaries touching an unreachable slot never
/// count as changes.
struct SlotTrace {
  std::vector<std::optional<double>> delay_ms;
  std::vector<char> switch_into;

  [[nodiscard]] int num_slots() const { return static_cast<int>(delay_ms.size()); }

  static SlotTrace from_schedule(const RoutingSchedule& sched) {
    SlotTrace t;
    t.delay_ms = sched.delay_ms;
    t.switch_into.assign(sched.active.size(), 0);
    for (Slot i = 1; i < sched.num_slots(); ++i) t.switch_into[static_cast<std::size_t>(i)] = sched.switch_at(i);
    return t;
  }

  static SlotTrace from_selection(const DelayMatrix& d, const SelectionMatrix& s) {
    if (!s.feasible_for(d)) throw ValidationError("selection activates a nonexistent route");
    SlotTrace t;
    const int n = static_cast<int>(s.slots());
    for (int i = 1; i <= n; ++i) {
      t.delay_ms.push_back(d.at(s.active(i), i));
      t.switch_into.push_back(i > 1 && s.active(i) != s.active(i - 1));
    }
    return t;
  }
};

inline int valid_slots(const SlotTrace& t) {
  return static_cast<int>(std::count_if(t.delay_ms.begin(), t.delay_ms.end(), [](const auto& d) { return d.has_value(); }));
}

inline int switch_count(const SlotTrace& t) {
  return static_cast<int>(std::count(t.switch_into.begin(), t.switch_into.end(), 1));
}

/// Sum of the active routes' delays over reachable slots.
inline double eta_delay(const SlotTrace& t) {
  double sum = 0.0;
  for (const auto& d : t.delay_ms)
    if (d) sum += *d;
  return sum;
}

inline double eta_delay(const DelayMatrix& d, const SelectionMatrix& s) {
  return eta_delay(SlotTrace::from_selection(d, s));
}

/// Setup delay charged once per route change.
inline double eta_penalty(const SlotTrace& t, double eta_s_ms) { return eta_s_ms * switch_count(t); }

inline double eta_penalty(const SelectionMatrix& s, double eta_s_ms) {
  int changes = 0;
  for (int i = 1; i < static_cast<int>(s.slots()); ++i) changes += s.active(i) != s.active(i + 1);
  return eta_s_ms * changes;
}

/// Total latency: delay component plus penalty component.
inline double eta_le(const DelayMatrix& d, const SelectionMatrix& s, double eta_s_ms) {
  return eta_delay(d, s) + eta_penalty(s, eta_s_ms);
}

/// Route changes per reachable slot, in percent.
inline double route_change_rate(const SlotTrace& t) {
  const int n = valid_slots(t);
  return n == 0 ? 0.0 : 100.0 * switch_count(t) / n;
}

inline double route_change_rate(const SelectionMatrix& s) {
  return route_change_rate(SlotTrace::from_selection(
      DelayMatrix(std::vector<std::vector<double>>(s.routes(), std::vector<double>(s.slots(), 0.0))), s));
}

/// Per-slot latency: the active route's delay plus the setup delay in the
/// slot a new route comes into use. Slot 1 never carries a setup term.
inline std::vector<std::optional<double>> instantaneous_latency_series(const SlotTrace& t, double eta_s_ms) {
  std::vector<std::optional<double>> out(t.delay_ms.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    if (t.delay_ms[k]) out[k] = *t.delay_ms[k] + (t.switch_into[k] ? eta_s_ms : 0.0);
  return out;
}

inline std::vector<double> valid_values(const std::vector<std::optional<double>>& series) {
  std::vector<double> out;
  for (const auto& v : series)
    if (v) out.push_back(*v);
  return out;
}

/// Fraction of reachable slots whose latency exceeds `eta_q_ms`.
inline double outage_probability(const std::vector<std::optional<double>>& latency, double eta_q_ms) {
  if (!(eta_q_ms > 0.0)) throw ValidationError("QoS threshold must be > 0");
  const auto values = valid_values(latency);
  if (values.empty()) throw ValidationError("outage needs at least one reachable slot");
  const auto over = std::count_if(values.begin(), values.end(), [&](double x) { return x > eta_q_ms; });
  return static_cast<double>(over) / static_cast<double>(values.size());
}

inline double outage_probability(const std::vector<double>& latency, double eta_q_ms) {
  return outage_probability(std::vector<std::optional<double>>(latency.begin(), latency.end()), eta_q_ms);
}

/// Mean absolute latency difference between consecutive slots; pairs
/// touching an unreachable slot are skipped.
inline double average_jitter(const std::vector<std::optional<double>>& latency) {
  if (latency.size() < 2) throw ValidationError("jitter needs at least two slots");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t k = 0; k + 1 < latency.size(); ++k) {
    if (!latency[k] || !latency[k + 1]) continue;
    sum += std::abs(*latency[k] - *latency[k + 1]);
    ++pairs;
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

inline double average_jitter(const std::vector<double>& latency) {
  return average_jitter(std::vector<std::optional<double>>(latency.begin(), latency.end()));
}

/// Counts over half-open bins [k w, (k + 1) w).
struct Histogram {
  double bin_width = 0.25;
  std::vector<std::pair<long, std::size_t>> bins;  // (k, count), ascending k, only populated bins

  [[nodiscard]] std::size_t total() const {
    std::size_t n = 0;
    for (const auto& b : bins) n += b.second;
    return n;
  }
  [[nodiscard]] double lower_edge(long k) const { return static_cast<double>(k) * bin_width; }
  [[nodiscard]] double center(long k) const { return (static_cast<double>(k) + 0.5) * bin_width; }
};

inline Histogram histogram(const std::vector<double>& values, double bin_width_ms = 0.25) {
  if (!(bin_width_ms > 0.0)) throw ValidationError("bin width must be > 0");
  if (values.empty()) throw ValidationError("histogram needs at least one value");
  std::map<long, std::size_t> counts;
  for (double x : values) ++counts[static_cast<long>(std::floor(x / bin_width_ms))];
  return {bin_width_ms, {counts.begin(), counts.end()}};
}

inline Histogram histogram(const std::vector<std::optional<double>>& latency, double bin_width_ms = 0.25) {
  return histogram(valid_values(latency), bin_width_ms);
}

/// Two populated regions of a histogram, split at its widest empty gap, and
/// the centre of each region's most populated bin (lowest bin on ties).
struct Lobes {
  double lower_mode = 0.0;
  double upper_mode = 0.0;
  std::size_t lower_count = 0;
  std::size_t upper_count = 0;

  [[nodiscard]] double separation() const { return upper_mode - lower_mode; }
};

inline std::optional<Lobes> split_lobes(const Histogram& h) {
  if (h.bins.size() < 2) return std::nullopt;
  std::size_t cut = 0;
  long widest = 0;
  for (std::size_t k = 1; k < h.bins.size(); ++k) {
    const long gap = h.bins[k].first - h.bins[k - 1].first;
    if (gap > widest) {
      widest = gap;
      cut = k;
    }
  }
  if (widest <= 1) return std::nullopt;
  auto mode_of = [&](std::size_t from, std::size_t to, std::size_t& total) {
    std::size_t best = from;
    total = 0;
    for (std::size_t k = from; k < to; ++k) {
      total += h.bins[k].second;
      if (h.bins[k].second > h.bins[best].second) best = k;
    }
    return h.center(h.bins[best].first);
  };
  Lobes lobes;
  lobes.lower_mode = mode_of(0, cut, lobes.lower_count);
  lobes.upper_mode = mode_of(cut, h.bins.size(), lobes.upper_count);
  return lobes;
}

struct MetricsReport {
  double eta_s_ms = 0.0;
  int num_slots = 0;
  int reachable_slots = 0;
  int route_changes = 0;
  double eta_delay_ms = 0.0;
  double eta_penalty_ms = 0.0;
  double eta_le_ms = 0.0;
  double mean_le_ms = 0.0;
  double mean_delay_ms = 0.0;
  double lambda_pct = 0.0;
  double jitter_ms = 0.0;
  std::vector<std::optional<double>> latency_ms;
  std::vector<std::pair<double, double>> outage;  // (eta_q, probability)
  Histogram hist;

  [[nodiscard]] double coverage() const {
    return num_slots == 0 ? 0.0 : static_cast<double>(reachable_slots) / num_slots;
  }
};

/// Every metric of one trace. Means and the change rate are taken over
/// reachable slots, which is all N slots whenever the pair stays connected.
inline MetricsReport evaluate(const SlotTrace& trace, double eta_s_ms, const std::vector<double>& qos_ms = {},
                              double bin_width_ms = 0.25) {
  MetricsReport m;
  m.eta_s_ms = eta_s_ms;
  m.num_slots = trace.num_slots();
  m.reachable_slots = valid_slots(trace);
  m.route_changes = switch_count(trace);
  m.eta_delay_ms = eta_delay(trace);
  m.eta_penalty_ms = eta_penalty(trace, eta_s_ms);
  m.eta_le_ms = m.eta_delay_ms + m.eta_penalty_ms;
  m.lambda_pct = route_change_rate(trace);
  m.latency_ms = instantaneous_latency_series(trace, eta_s_ms);
  if (m.reachable_slots > 0) {
    m.mean_le_ms = m.eta_le_ms / m.reachable_slots;
    m.mean_delay_ms = m.eta_delay_ms / m.reachable_slots;
    for (double q : qos_ms) m.outage.emplace_back(q, outage_probability(m.latency_ms, q));
    m.hist = histogram(m.latency_ms, bin_width_ms);
  }
  if (m.num_slots >= 2) m.jitter_ms = average_jitter(m.latency_ms);
  return m;
}

inline MetricsReport evaluate(const RoutingSchedule& sched, double eta_s_ms, const std::vector<double>& qos_ms = {},
                              double bin_width_ms = 0.25) {
  return evaluate(SlotTrace::from_schedule(sched), eta_s_ms, qos_ms, bin_width_ms);
}

}  // namespace leosim
