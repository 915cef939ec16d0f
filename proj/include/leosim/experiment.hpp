#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "leosim/constellation.hpp"
#include "leosim/error.hpp"
#include "leosim/metrics.hpp"
#include "leosim/oracle.hpp"
#include "leosim/routing.hpp"
#include "leosim/series_io.hpp"
#include "leosim/topology.hpp"

namespace leosim {

inline constexpr const char* kVersion = "1.0.0";

inline std::vector<GroundStation> default_stations() {
  return {{0, "NewYork", 40.7128, -74.0060}, {0, "London", 51.5074, -0.1278}, {0, "Hanoi", 21.0285, 105.8542}};
}

struct OracleCheckConfig {
  int instances = 1000;
  int max_routes = 4;
  int max_slots = 6;
  double inf_fraction = 0.2;
  std::vector<double> eta_s_ms = {0, 1, 10, 100, 1000};
  int toy_graphs = 50;
};

/// Everything one invocation needs. Defaults reproduce the Starlink shell
/// scenario (24 x 66 at 550 km, 53 deg, 600 one-second slots).
struct ExperimentConfig {
  ConstellationParams constellation;
  ScenarioParams scenario;
  std::vector<GroundStation> stations = default_stations();
  std::string source = "NewYork";
  std::string destination = "London";
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  std::vector<double> eta_s_ms = {1, 10, 100, 1000};
  std::optional<double> gamma;  // nullopt: gamma tracks eta_s
  double cost_thrsh_ms = 100.0;
  std::vector<double> qos_ms = {27, 30, 35, 40};  // paired with eta_s_ms
  double histogram_bin_ms = 0.25;
  LifetimeMode lifetime = LifetimeMode::per_run;
  bool reset_dropped_edges = false;
  int timing_iterations = 1;
  unsigned workers = 1;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  OracleCheckConfig oracle;

  void validate() const {
    constellation.validate();
    scenario.validate();
    for (const auto& gs : stations) gs.validate();
    if (eta_s_ms.empty()) throw ValidationError("at least one eta_s value is required");
    for (double e : eta_s_ms)
      if (!(e > 0.0)) throw ValidationError("every eta_s must be > 0");
    if (!qos_ms.empty() && qos_ms.size() != eta_s_ms.size())
      throw ValidationError("qos list must pair one threshold with each eta_s");
    for (double q : qos_ms)
      if (!(q > 0.0)) throw ValidationError("QoS thresholds must be > 0");
    if (gamma && !(*gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
    if (!(cost_thrsh_ms > 0.0)) throw ValidationError("cost_thrsh must be > 0");
    if (!(histogram_bin_ms > 0.0)) throw ValidationError("histogram bin width must be > 0");
    if (timing_iterations < 1) throw ValidationError("timing_iterations must be >= 1");
    if (algorithms.empty()) throw ValidationError("no algorithms selected");
  }

  [[nodiscard]] RunParams run_params(double eta_s) const {
    return {eta_s, gamma, cost_thrsh_ms, lifetime, reset_dropped_edges};
  }

  [[nodiscard]] std::optional<double> qos_for(double eta_s) const {
    for (std::size_t k = 0; k < eta_s_ms.size() && k < qos_ms.size(); ++k)
      if (eta_s_ms[k] == eta_s) return qos_ms[k];
    return std::nullopt;
  }
};

namespace detail {

inline double number_or_inf(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) return kInf;
  throw ValidationError(std::string(what) + " must be a number or \"inf\"");
}

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("constellation")) {
      const auto& k = j.at("constellation");
      detail::read_opt(k, "num_planes", c.constellation.num_planes);
      detail::read_opt(k, "sats_per_plane", c.constellation.sats_per_plane);
      detail::read_opt(k, "inclination_deg", c.constellation.inclination_deg);
      detail::read_opt(k, "altitude_km", c.constellation.altitude_km);
      detail::read_opt(k, "phasing_factor", c.constellation.phasing_factor);
      detail::read_opt(k, "epoch_raan_offset_deg", c.constellation.epoch_raan_offset_deg);
    }
    if (j.contains("scenario")) {
      const auto& s = j.at("scenario");
      detail::read_opt(s, "lisl_range_km", c.scenario.lisl_range_km);
      detail::read_opt(s, "gs_range_km", c.scenario.gs_range_km);
      detail::read_opt(s, "node_delay_ms", c.scenario.node_delay_ms);
      detail::read_opt(s, "slot_duration_s", c.scenario.slot_duration_s);
      detail::read_opt(s, "num_slots", c.scenario.num_slots);
    }
    if (j.contains("ground_stations")) {
      c.stations.clear();
      for (const auto& g : j.at("ground_stations"))
        c.stations.push_back({0, g.at("name").get<std::string>(), g.at("latitude_deg").get<double>(),
                              g.at("longitude_deg").get<double>()});
    }
    detail::read_opt(j, "source", c.source);
    detail::read_opt(j, "destination", c.destination);
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algorithms")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    detail::read_opt(j, "eta_s_ms", c.eta_s_ms);
    if (j.contains("gamma")) {
      const auto& g = j.at("gamma");
      if (g.is_string() && g.get<std::string>() == "auto")
        c.gamma.reset();
      else
        c.gamma = g.get<double>();
    }
    if (j.contains("cost_thrsh_ms")) c.cost_thrsh_ms = detail::number_or_inf(j.at("cost_thrsh_ms"), "cost_thrsh_ms");
    detail::read_opt(j, "qos_ms", c.qos_ms);
    detail::read_opt(j, "histogram_bin_ms", c.histogram_bin_ms);
    if (j.contains("lifetime_mode")) {
      const auto m = j.at("lifetime_mode").get<std::string>();
      if (m == "run")
        c.lifetime = LifetimeMode::per_run;
      else if (m == "global")
        c.lifetime = LifetimeMode::global;
      else
        throw ValidationError("lifetime_mode must be \"run\" or \"global\"");
    }
    detail::read_opt(j, "reset_dropped_edges", c.reset_dropped_edges);
    detail::read_opt(j, "timing_iterations", c.timing_iterations);
    detail::read_opt(j, "workers", c.workers);
    detail::read_opt(j, "output_dir", c.output_dir);
    detail::read_opt(j, "seed", c.seed);
    if (j.contains("oracle")) {
      const auto& o = j.at("oracle");
      detail::read_opt(o, "instances", c.oracle.instances);
      detail::read_opt(o, "max_routes", c.oracle.max_routes);
      detail::read_opt(o, "max_slots", c.oracle.max_slots);
      detail::read_opt(o, "inf_fraction", c.oracle.inf_fraction);
      detail::read_opt(o, "eta_s_ms", c.oracle.eta_s_ms);
      detail::read_opt(o, "toy_graphs", c.oracle.toy_graphs);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["constellation"] = {{"num_planes", c.constellation.num_planes},
                        {"sats_per_plane", c.constellation.sats_per_plane},
                        {"inclination_deg", c.constellation.inclination_deg},
                        {"altitude_km", c.constellation.altitude_km},
                        {"phasing_factor", c.constellation.phasing_factor},
                        {"epoch_raan_offset_deg", c.constellation.epoch_raan_offset_deg}};
  j["scenario"] = {{"lisl_range_km", c.scenario.lisl_range_km},
                   {"gs_range_km", c.scenario.gs_range_km},
                   {"node_delay_ms", c.scenario.node_delay_ms},
                   {"slot_duration_s", c.scenario.slot_duration_s},
                   {"num_slots", c.scenario.num_slots}};
  j["ground_stations"] = nlohmann::json::array();
  for (const auto& g : c.stations)
    j["ground_stations"].push_back({{"name", g.name}, {"latitude_deg", g.latitude_deg}, {"longitude_deg", g.longitude_deg}});
  j["source"] = c.source;
  j["destination"] = c.destination;
  j["algorithms"] = nlohmann::json::array();
  for (auto a : c.algorithms) j["algorithms"].push_back(std::string(to_string(a)));
  j["eta_s_ms"] = c.eta_s_ms;
  j["gamma"] = c.gamma ? nlohmann::json(*c.gamma) : nlohmann::json("auto");
  j["cost_thrsh_ms"] = std::isinf(c.cost_thrsh_ms) ? nlohmann::json("inf") : nlohmann::json(c.cost_thrsh_ms);
  j["qos_ms"] = c.qos_ms;
  j["histogram_bin_ms"] = c.histogram_bin_ms;
  j["lifetime_mode"] = c.lifetime == LifetimeMode::per_run ? "run" : "global";
  j["reset_dropped_edges"] = c.reset_dropped_edges;
  j["timing_iterations"] = c.timing_iterations;
  j["workers"] = c.workers;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["oracle"] = {{"instances", c.oracle.instances},   {"max_routes", c.oracle.max_routes},
                 {"max_slots", c.oracle.max_slots},   {"inf_fraction", c.oracle.inf_fraction},
                 {"eta_s_ms", c.oracle.eta_s_ms},     {"toy_graphs", c.oracle.toy_graphs}};
  return j;
}

inline SnapshotSeries generate(const ExperimentConfig& c) {
  return generate_series(c.constellation, c.scenario, c.stations, c.workers);
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRow {
  Algorithm algorithm = Algorithm::ilsr;
  double eta_s_ms = 0.0;
  double gamma = 0.0;
  MetricsReport metrics;
  std::optional<double> eta_q_ms;
  std::optional<double> outage;
  double runtime_ms = 0.0;
};

/// One row per (algorithm, eta_s), algorithm-major in config order. Cells
/// run on up to `workers` threads; results do not depend on the count.
inline std::vector<SweepRow> run_sweep(const SnapshotSeries& series, const LinkDetails& details,
                                       const ExperimentConfig& c) {
  const NodeId src = series.roster.find_station(c.source);
  const NodeId dst = series.roster.find_station(c.destination);
  std::vector<SweepRow> rows;
  for (auto a : c.algorithms)
    for (double e : c.eta_s_ms) {
      SweepRow r;
      r.algorithm = a;
      r.eta_s_ms = e;
      r.gamma = c.gamma.value_or(e);
      r.eta_q_ms = c.qos_for(e);
      rows.push_back(r);
    }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      auto& row = rows[k];
      const auto params = c.run_params(row.eta_s_ms);
      RoutingSchedule sched;
      const auto t0 = std::chrono::steady_clock::now();
      for (int it = 0; it < c.timing_iterations; ++it) sched = run_algorithm(row.algorithm, series, details, src, dst, params);
      const auto t1 = std::chrono::steady_clock::now();
      row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count() / c.timing_iterations;
      std::vector<double> qos;
      if (row.eta_q_ms) qos.push_back(*row.eta_q_ms);
      row.metrics = evaluate(sched, row.eta_s_ms, qos, c.histogram_bin_ms);
      if (!row.metrics.outage.empty()) row.outage = row.metrics.outage.front().second;
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(c.workers, static_cast<unsigned>(rows.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Output

inline std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline void write_report(std::ostream& out, const MetricsReport& m, std::string_view algorithm,
                         const std::string& source, const std::string& destination, double gamma, double runtime_ms) {
  out << "# metric value unit\n";
  out << "algorithm " << algorithm << " -\n";
  out << "source " << source << " -\n";
  out << "destination " << destination << " -\n";
  out << "eta_s " << fmt_num(m.eta_s_ms) << " ms\n";
  out << "gamma " << fmt_num(gamma) << " -\n";
  out << "num_slots " << m.num_slots << " slots\n";
  out << "reachable_slots " << m.reachable_slots << " slots\n";
  out << "coverage " << fmt_num(m.coverage()) << " fraction\n";
  out << "route_changes " << m.route_changes << " count\n";
  out << "eta_delay " << fmt_num(m.eta_delay_ms) << " ms\n";
  out << "eta_penalty " << fmt_num(m.eta_penalty_ms) << " ms\n";
  out << "eta_le " << fmt_num(m.eta_le_ms) << " ms\n";
  out << "mean_eta_le " << fmt_num(m.mean_le_ms) << " ms\n";
  out << "mean_eta_delay " << fmt_num(m.mean_delay_ms) << " ms\n";
  out << "lambda " << fmt_num(m.lambda_pct) << " percent\n";
  out << "average_jitter " << fmt_num(m.jitter_ms) << " ms\n";
  for (const auto& [q, p] : m.outage) out << "outage@" << fmt_num(q) << " " << fmt_num(p) << " probability\n";
  out << "runtime " << fmt_num(runtime_ms) << " ms\n";
}

inline void write_schedule_csv(std::ostream& out, const RoutingSchedule& sched, const MetricsReport& m) {
  out << "slot,reachable,delay_ms,latency_ms,switch_into,hops,route\n";
  for (Slot i = 1; i <= sched.num_slots(); ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    const auto& r = sched.at(i);
    out << i << ',' << (r ? 1 : 0) << ',';
    if (r) {
      out << fmt_num(*sched.delay_ms[k]) << ',' << fmt_num(*m.latency_ms[k]) << ','
          << (i > 1 && sched.switch_at(i - 1) ? 1 : 0) << ',' << r->hops() << ',' << r->to_string() << '\n';
    } else {
      out << ",,0,,\n";
    }
  }
}

inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lower_ms,bin_upper_ms,count\n";
  for (const auto& [k, n] : h.bins) out << fmt_num(h.lower_edge(k)) << ',' << fmt_num(h.lower_edge(k + 1)) << ',' << n << '\n';
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "algorithm,eta_s_ms,gamma,mean_eta_le_ms,mean_eta_delay_ms,lambda_pct,eta_q_ms,outage,average_jitter_ms,"
         "reachable_slots\n";
  for (const auto& r : rows) {
    out << to_string(r.algorithm) << ',' << fmt_num(r.eta_s_ms) << ',' << fmt_num(r.gamma) << ','
        << fmt_num(r.metrics.mean_le_ms) << ',' << fmt_num(r.metrics.mean_delay_ms) << ','
        << fmt_num(r.metrics.lambda_pct) << ',' << (r.eta_q_ms ? fmt_num(*r.eta_q_ms) : "") << ','
        << (r.outage ? fmt_num(*r.outage) : "") << ',' << fmt_num(r.metrics.jitter_ms) << ','
        << r.metrics.reachable_slots << '\n';
  }
}

inline void write_timing_csv(std::ostream& out, const std::vector<SweepRow>& rows, int iterations) {
  out << "algorithm,eta_s_ms,iterations,mean_runtime_ms\n";
  for (const auto& r : rows)
    out << to_string(r.algorithm) << ',' << fmt_num(r.eta_s_ms) << ',' << iterations << ',' << fmt_num(r.runtime_ms) << '\n';
}

inline void write_manifest(const std::filesystem::path& path, const ExperimentConfig& c, const std::string& command) {
  nlohmann::json j;
  j["tool"] = "leosim";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config_to_json(c);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Oracle cross-checks

/// Random feasible instance: delays on a 1/8 ms grid in [20, 40] so that all
/// sums are exact, each entry +inf with probability `inf_fraction`, columns
/// without a finite entry re-rolled.
inline DelayMatrix random_delay_matrix(std::mt19937_64& rng, std::size_t routes, std::size_t slots, double inf_fraction) {
  std::uniform_int_distribution<int> eighths(0, 160);
  std::bernoulli_distribution missing(inf_fraction);
  std::vector<std::vector<double>> rows(routes, std::vector<double>(slots));
  for (std::size_t c = 0; c < slots; ++c) {
    bool any = false;
    while (!any) {
      for (std::size_t r = 0; r < routes; ++r) {
        rows[r][c] = missing(rng) ? kInf : 20.0 + 0.125 * eighths(rng);
        any = any || std::isfinite(rows[r][c]);
      }
    }
  }
  return DelayMatrix(std::move(rows));
}

/// Small random series between two ground stations over a handful of
/// satellites, with integer delays.
inline SnapshotSeries random_toy_series(std::mt19937_64& rng, std::size_t satellites, int slots, double edge_prob) {
  ScenarioParams sc;
  sc.num_slots = slots;
  Roster roster;
  roster.num_satellites = satellites;
  roster.add_station("A", 0.0, 0.0);
  roster.add_station("B", 0.0, 90.0);
  std::bernoulli_distribution present(edge_prob);
  std::uniform_int_distribution<int> delay(1, 10);
  std::vector<Snapshot> snaps;
  for (Slot i = 1; i <= slots; ++i) {
    std::vector<Link> links;
    for (NodeId u = 0; u < roster.num_nodes(); ++u)
      for (NodeId v = u + 1; v < roster.num_nodes(); ++v) {
        if (roster.is_ground(u) && roster.is_ground(v)) continue;
        if (present(rng)) links.push_back({EdgeKey{u, v}, static_cast<double>(delay(rng))});
      }
    snaps.emplace_back(i, std::move(links));
  }
  return SnapshotSeries::make(sc, std::move(roster), std::move(snaps));
}

struct OracleCheckReport {
  int instances = 0;
  int mismatches = 0;
  int single_route_checks = 0;
  int dominance_checks = 0;
  int dominance_violations = 0;
  std::vector<std::pair<double, double>> example_costs;  // (eta_s, cost) on the 3x4 textbook instance
  std::string first_failure;

  [[nodiscard]] bool ok() const { return mismatches == 0 && dominance_violations == 0 && first_failure.empty(); }
};

/// The 3-route, 4-slot example instance and its hand-picked selection.
inline DelayMatrix example_delay_matrix() {
  return DelayMatrix({{26, 27, 28, kInf}, {27, 26, 25, 25}, {kInf, 28, 27, 26}});
}
inline SelectionMatrix example_selection() {
  return SelectionMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

inline OracleCheckReport run_oracle_check(const ExperimentConfig& c) {
  OracleCheckReport rep;
  std::mt19937_64 rng(c.seed);
  auto fail = [&](const std::string& msg) {
    if (rep.first_failure.empty()) rep.first_failure = msg;
  };

  for (double e : {0.0, 1.0, 1000.0}) rep.example_costs.emplace_back(e, dp_optimal(example_delay_matrix(), e).cost);

  std::uniform_int_distribution<int> routes(1, c.oracle.max_routes);
  std::uniform_int_distribution<int> slots(1, c.oracle.max_slots);
  std::uniform_int_distribution<std::size_t> pick(0, c.oracle.eta_s_ms.size() - 1);
  for (int n = 0; n < c.oracle.instances; ++n) {
    const auto k = static_cast<std::size_t>(routes(rng));
    const auto s = static_cast<std::size_t>(slots(rng));
    const double eta = c.oracle.eta_s_ms[pick(rng)];
    const auto d = random_delay_matrix(rng, k, s, c.oracle.inf_fraction);
    const auto dp = dp_optimal(d, eta);
    const auto bf = brute_force_optimal(d, eta);
    ++rep.instances;
    if (dp.cost != bf.cost) {
      ++rep.mismatches;
      fail("instance " + std::to_string(n) + " (seed " + std::to_string(c.seed) + "): dp " + fmt_num(dp.cost) +
           " != brute force " + fmt_num(bf.cost));
    }
    if (k == 1) {
      ++rep.single_route_checks;
      if (dp.cost != eta_delay(d, dp.selection) || eta_penalty(dp.selection, eta) != 0.0)
        fail("instance " + std::to_string(n) + ": single-route cost is not the row sum");
    }
  }

  for (int g = 0; g < c.oracle.toy_graphs; ++g) {
    const auto series = random_toy_series(rng, 5, 5, 0.5);
    const NodeId src = series.roster.find_station("A");
    const NodeId dst = series.roster.find_station("B");
    RouteSet set;
    try {
      set = enumerate_routes(series, src, dst, series.roster.num_nodes());
    } catch (const ValidationError&) {
      continue;
    }
    if (set.delays.infeasible_slot()) continue;
    const auto details = build_link_details(series);
    const double eta = c.oracle.eta_s_ms[pick(rng)];
    const double optimum = dp_optimal(set.delays, eta).cost;
    for (auto a : kAllAlgorithms) {
      const auto sched = run_algorithm(a, series, details, src, dst, RunParams{eta, std::nullopt, 100.0});
      auto sel = to_selection(sched, set);
      if (!sel) continue;
      ++rep.dominance_checks;
      const double cost = eta_le(set.delays, *sel, eta);
      if (cost < optimum) {
        ++rep.dominance_violations;
        fail("toy graph " + std::to_string(g) + ": " + std::string(to_string(a)) + " cost " + fmt_num(cost) +
             " beats the optimum " + fmt_num(optimum));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lifetime-averaged latency example: four routes with known delay lists.

inline const std::vector<std::vector<double>>& table2_route_delays() {
  static const std::vector<std::vector<double>> delays = {
      {26, 26.5, 26.8, 27, 27.2, 27.4},
      {26.5, 26.6, 27.2, 27.6, 27.8, 28.1, 28.3, 28.4, 28.7, 28.9, 29.1},
      {26.6, 26.9, 27.5, 27.8, 28, 28.1, 28.4},
      {27.1, 27.2, 27.4, 27.9, 28.2, 28.4, 28.7, 28.9},
  };
  return delays;
}

/// A series realising the four routes as edge-disjoint two-hop paths
/// A - sat(k) - B, route k living for as many slots as it has delays.
inline SnapshotSeries table2_series() {
  const auto& routes = table2_route_delays();
  std::size_t horizon = 0;
  for (const auto& r : routes) horizon = std::max(horizon, r.size());
  ScenarioParams sc;
  sc.num_slots = static_cast<int>(horizon);
  Roster roster;
  roster.num_satellites = routes.size();
  const NodeId a = roster.add_station("A", 0.0, 0.0);
  const NodeId b = roster.add_station("B", 0.0, 10.0);
  std::vector<Snapshot> snaps;
  for (std::size_t i = 0; i < horizon; ++i) {
    std::vector<Link> links;
    for (std::size_t k = 0; k < routes.size(); ++k) {
      if (i >= routes[k].size()) continue;
      const double half = routes[k][i] / 2.0;
      links.push_back({EdgeKey::of(a, static_cast<NodeId>(k)), half});
      links.push_back({EdgeKey::of(static_cast<NodeId>(k), b), half});
    }
    snaps.emplace_back(static_cast<Slot>(i + 1), std::move(links));
  }
  return SnapshotSeries::make(sc, std::move(roster), std::move(snaps));
}

struct Table2Result {
  std::vector<double> eta_s_ms;
  std::vector<std::vector<double>> average;  // [route][eta]
  std::vector<int> alpr_choice;              // 1-based route chosen at slot 1, per eta
};

inline Table2Result replay_table2(const std::vector<double>& eta_values = {1.0, 1000.0}) {
  const auto series = table2_series();
  const auto details = build_link_details(series);
  const NodeId a = series.roster.find_station("A");
  const NodeId b = series.roster.find_station("B");
  Table2Result res;
  res.eta_s_ms = eta_values;
  for (std::size_t k = 0; k < table2_route_delays().size(); ++k) {
    const Route route{{a, static_cast<NodeId>(k), b}};
    std::vector<double> row;
    for (double e : eta_values) row.push_back(alpr_average_latency(route, details, series, 1, e));
    res.average.push_back(std::move(row));
  }
  for (double e : eta_values) {
    const auto sched = alpr(series, details, a, b, e);
    res.alpr_choice.push_back(sched.at(1) ? static_cast<int>(sched.at(1)->nodes[1]) + 1 : 0);
  }
  return res;
}

}  // namespace leosim
