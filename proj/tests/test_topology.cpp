#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"

namespace leosim {
namespace {

using testing::make_series;

// Edge 0-1 present in slots 1-3 and 6-8 of 10; edge 1-2 only in slot 10.
SnapshotSeries gappy() {
  std::vector<std::vector<testing::EdgeSpec>> slots(10);
  for (int i : {1, 2, 3, 6, 7, 8}) slots[i - 1].push_back({0, 1, 2.0});
  slots[9].push_back({1, 2, 3.0});
  return make_series(3, 1, slots);
}

TEST(Snapshot, CanonicalisesAndSorts) {
  Snapshot s(4, {{{5, 2}, 1.5}, {{0, 1}, 2.5}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.links()[0].key, (EdgeKey{0, 1}));
  EXPECT_EQ(s.links()[1].key, (EdgeKey{2, 5}));
  EXPECT_EQ(s.delay(EdgeKey::of(5, 2)), 1.5);
  EXPECT_FALSE(s.contains({1, 2}));
}

TEST(Snapshot, RejectsMalformedEdges) {
  EXPECT_THROW(Snapshot(1, {{{1, 1}, 1.0}}), ValidationError);
  EXPECT_THROW(Snapshot(1, {{{0, 1}, 0.0}}), ValidationError);
  EXPECT_THROW(Snapshot(1, {{{0, 1}, -3.0}}), ValidationError);
  EXPECT_THROW(Snapshot(1, {{{0, 1}, 1.0}, {{1, 0}, 2.0}}), ValidationError);
}

TEST(SnapshotSeries, ValidateRejectsBadRosters) {
  EXPECT_THROW(make_series(2, 2, {{{2, 3, 1.0}}}), ValidationError);  // ground to ground
  EXPECT_THROW(make_series(2, 1, {{{0, 7, 1.0}}}), ValidationError);
  auto s = make_series(2, 1, {{{0, 1, 1.0}}, {{0, 1, 1.0}}});
  std::swap(s.snapshots[0], s.snapshots[1]);
  EXPECT_THROW(s.validate(), ValidationError);
  s.scenario.num_slots = 3;
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(LinkDetails, SlotsAndRuns) {
  const auto d = build_link_details(gappy());
  ASSERT_EQ(d.size(), 2u);
  const auto& e = d.entry(*d.index_of({0, 1}));
  EXPECT_EQ(e.slots, (std::vector<Slot>{1, 2, 3, 6, 7, 8}));
  EXPECT_EQ(e.runs, (std::vector<ContiguousRun>{{1, 3}, {6, 8}}));
  EXPECT_EQ(d.global_lifetime(*d.index_of({0, 1})), (ContiguousRun{1, 8}));
  EXPECT_FALSE(d.index_of({0, 2}));
}

TEST(LinkDetails, ContiguousRunLookup) {
  const auto d = build_link_details(gappy());
  EXPECT_EQ(contiguous_run(d, {0, 1}, 2), (ContiguousRun{1, 3}));
  EXPECT_EQ(contiguous_run(d, {0, 1}, 4), (ContiguousRun{6, 8}));
  EXPECT_EQ(contiguous_run(d, {0, 1}, 8), (ContiguousRun{6, 8}));
  EXPECT_FALSE(contiguous_run(d, {0, 1}, 9));
  EXPECT_FALSE(contiguous_run(d, {0, 2}, 1));
  EXPECT_EQ(contiguous_run(d, {1, 2}, 1), (ContiguousRun{10, 10}));
}

SnapshotSeries random_series(std::mt19937_64& rng, std::size_t sats, int slots, double p) {
  std::bernoulli_distribution present(p);
  std::vector<std::vector<testing::EdgeSpec>> spec(static_cast<std::size_t>(slots));
  for (auto& edges : spec)
    for (NodeId u = 0; u < sats + 2; ++u)
      for (NodeId v = u + 1; v < sats + 2; ++v)
        if (!(u >= sats && v >= sats) && present(rng)) edges.push_back({u, v, 1.0 + u + 0.5 * v});
  return make_series(sats, 2, spec);
}

TEST(LinkDetails, DualityWithSnapshots) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto series = random_series(rng, 5, 30, 0.4);
    const auto d = build_link_details(series);
    std::size_t records = 0;
    for (const auto& snap : series.snapshots) {
      records += snap.size();
      for (const auto& l : snap.links()) {
        auto idx = d.index_of(l.key);
        ASSERT_TRUE(idx);
        const auto& slots = d.entry(*idx).slots;
        EXPECT_TRUE(std::binary_search(slots.begin(), slots.end(), snap.slot()));
      }
    }
    std::size_t listed = 0;
    for (const auto& e : d.entries()) {
      listed += e.slots.size();
      for (Slot s : e.slots) { EXPECT_TRUE(series.at(s).contains(e.key)); }
      // runs are maximal and cover exactly the listed slots
      std::set<Slot> covered;
      for (std::size_t r = 0; r < e.runs.size(); ++r) {
        for (Slot s = e.runs[r].first; s <= e.runs[r].last; ++s) covered.insert(s);
        if (r) { EXPECT_GT(e.runs[r].first, e.runs[r - 1].last + 1); }
      }
      EXPECT_EQ(covered, std::set<Slot>(e.slots.begin(), e.slots.end()));
    }
    EXPECT_EQ(records, listed);
  }
}

TEST(LinkDetails, ContiguousRunIsMaximal) {
  std::mt19937_64 rng(11);
  const auto series = random_series(rng, 4, 40, 0.6);
  const auto d = build_link_details(series);
  for (const auto& e : d.entries())
    for (Slot i = 1; i <= 40; ++i) {
      auto run = contiguous_run(d, e.key, i);
      if (!series.at(i).contains(e.key)) {
        if (run) { EXPECT_GT(run->first, i); }
        continue;
      }
      ASSERT_TRUE(run);
      EXPECT_LE(run->first, i);
      EXPECT_GE(run->last, i);
      for (Slot s = run->first; s <= run->last; ++s) { EXPECT_TRUE(series.at(s).contains(e.key)); }
      if (run->first > 1) { EXPECT_FALSE(series.at(run->first - 1).contains(e.key)); }
      if (run->last < 40) { EXPECT_FALSE(series.at(run->last + 1).contains(e.key)); }
    }
}

TEST(SeriesIo, RoundTripIsExact) {
  ConstellationParams p{4, 8, 53.0, 550.0, 1, 0.0};
  ScenarioParams sc{3000.0, 2500.0, 1.0, 20.0, 6};
  const auto series = generate_series(p, sc, default_stations());
  std::stringstream buf;
  export_series(series, buf);
  const std::string text = buf.str();
  EXPECT_EQ(text.rfind("leosim-series 1\n", 0), 0u);
  const auto back = import_series(buf);
  EXPECT_EQ(back, series);
  std::stringstream again;
  export_series(back, again);
  EXPECT_EQ(again.str(), text);
}

std::string import_error(const std::string& text) {
  std::istringstream in(text);
  try {
    import_series(in);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

const std::string kHead = "leosim-series 1\nscenario 1500 1000 1 1 2\nsatellites 2\nground 2 G1 0 0\n";

TEST(SeriesIo, DiagnosticsNameTheProblem) {
  EXPECT_NE(import_error(kHead + "slot 2 0\nslot 1 0\n").find("non-consecutive slots"), std::string::npos);
  EXPECT_NE(import_error(kHead + "slot 1 0\nslot 1 0\n").find("out-of-order slots"), std::string::npos);
  EXPECT_NE(import_error(kHead + "slot 1 1\n1 0 1 0.000000000\nslot 2 0\n").find("non-positive delay"),
            std::string::npos);
  EXPECT_NE(import_error(kHead + "slot 1 1\n1 0 9 1.000000000\nslot 2 0\n").find("unknown node id"),
            std::string::npos);
  EXPECT_NE(import_error(kHead + "slot 1 2\n1 0 1 1.000000000\n").find("truncated slot"), std::string::npos);
  EXPECT_EQ(import_error(kHead + "slot 1 1\n1 0 1 1.000000000\nslot 2 0\n"), "");
  EXPECT_NE(import_error(kHead + "slot 1 1\n1 0 1 1.000000000\n\nslot 2 1\n2 0 1 -1\n").find("line 9"),
            std::string::npos);
}

TEST(SeriesIo, EveryLinePrefixIsRejected) {
  std::mt19937_64 rng(3);
  const auto series = random_series(rng, 3, 4, 0.5);
  std::stringstream buf;
  export_series(series, buf);
  std::vector<std::string> lines;
  for (std::string line; std::getline(buf, line);) lines.push_back(line);
  std::string prefix;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::istringstream in(prefix);
    EXPECT_THROW(import_series(in), ValidationError) << "prefix of " << k << " lines";
    prefix += lines[k] + "\n";
  }
  std::istringstream full(prefix);
  EXPECT_EQ(import_series(full), series);
}

}  // namespace
}  // namespace leosim
