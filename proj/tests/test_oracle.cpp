#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_support.hpp"

namespace leosim {
namespace {

using testing::A;
using testing::B;
using testing::G1;
using testing::G2;
using testing::make_series;
using testing::square;

TEST(DpOptimal, ExampleInstance) {
  const auto d = example_delay_matrix();
  EXPECT_EQ(dp_optimal(d, 0.0).cost, 102.0);
  EXPECT_EQ(dp_optimal(d, 1.0).cost, 103.0);
  EXPECT_EQ(dp_optimal(d, 1000.0).cost, 103.0);
  EXPECT_EQ(dp_optimal(d, 1000.0).selection.choices(), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(dp_optimal(d, 0.0).selection.choices(), (std::vector<std::size_t>{0, 1, 1, 1}));
}

TEST(DpOptimal, SingleRouteIsRowSum) {
  const DelayMatrix d({{3, 4.5, 7}});
  const auto s = dp_optimal(d, 1000.0);
  EXPECT_EQ(s.cost, 14.5);
  EXPECT_EQ(s.selection.choices(), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(DpOptimal, SingleSlotIsColumnMinimum) {
  const DelayMatrix d({{9}, {kInf}, {4}, {4}});
  const auto s = dp_optimal(d, 5.0);
  EXPECT_EQ(s.cost, 4.0);
  EXPECT_EQ(s.selection.active(1), 2u);
}

TEST(DpOptimal, ForcedAssignment) {
  const DelayMatrix d({{1, kInf, 1, kInf}, {kInf, 2, kInf, 2}});
  const auto s = dp_optimal(d, 100.0);
  EXPECT_EQ(s.selection.choices(), (std::vector<std::size_t>{0, 1, 0, 1}));
  EXPECT_EQ(s.cost, 306.0);
}

TEST(DpOptimal, TiesPreferStaying) {
  const DelayMatrix d({{1, 2}, {2, 1}});
  const auto s = dp_optimal(d, 1.0);
  EXPECT_EQ(s.cost, 3.0);
  EXPECT_EQ(s.selection.choices(), (std::vector<std::size_t>{0, 0}));
}

TEST(DpOptimal, InfeasibleColumnRejected) {
  const DelayMatrix d({{1, kInf}, {2, kInf}});
  EXPECT_THROW(dp_optimal(d, 1.0), ValidationError);
  EXPECT_THROW(brute_force_optimal(d, 1.0), ValidationError);
  EXPECT_THROW(DelayMatrix({{1, -2}}), ValidationError);
  EXPECT_THROW(DelayMatrix({{1, 2}, {3}}), ValidationError);
}

TEST(DpOptimal, AgreesWithBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> routes(1, 4), slots(1, 6);
  for (int n = 0; n < 1000; ++n) {
    const auto d = random_delay_matrix(rng, routes(rng), slots(rng), 0.2);
    for (double eta : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
      const auto dp = dp_optimal(d, eta);
      const auto bf = brute_force_optimal(d, eta);
      ASSERT_EQ(dp.cost, bf.cost) << "instance " << n << " eta " << eta;
      EXPECT_TRUE(dp.selection.feasible_for(d));
      EXPECT_EQ(dp.cost, eta_le(d, dp.selection, eta));
    }
  }
}

TEST(DpOptimal, CostGrowsWithSetupDelay) {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 200; ++n) {
    const auto d = random_delay_matrix(rng, 4, 8, 0.3);
    double prev = -1.0;
    for (double eta : {0.0, 0.5, 1.0, 3.0, 10.0, 100.0}) {
      const double c = dp_optimal(d, eta).cost;
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(BruteForce, RefusesHugeSpaces) {
  const DelayMatrix d(std::vector<std::vector<double>>(10, std::vector<double>(10, 1.0)));
  EXPECT_THROW(brute_force_optimal(d, 1.0), SizeError);
}

TEST(EnumerateRoutes, SquareWithCrossLink) {
  auto edges = square(10, 12);
  edges.push_back({A, B, 1.0});
  const auto s = make_series(2, 2, {edges, square(10, 12)});
  const auto set = enumerate_routes(s, G1, G2, 3);
  const std::vector<Route> want{Route{{G1, A, B, G2}}, Route{{G1, A, G2}}, Route{{G1, B, A, G2}},
                                Route{{G1, B, G2}}};
  EXPECT_EQ(set.routes, want);
  EXPECT_EQ(set.delays.at(0, 1), 12.0);
  EXPECT_EQ(set.delays.at(0, 2), kInf);
  EXPECT_EQ(set.delays.at(3, 2), 12.0);
  EXPECT_EQ(enumerate_routes(s, G1, G2, 2).routes.size(), 2u);
  EXPECT_THROW(enumerate_routes(s, G1, G2, 1), ValidationError);
  EXPECT_THROW(enumerate_routes(s, G1, G2, 3, 2), SizeError);
}

TEST(EnumerateRoutes, DropsRoutesThatNeverExist) {
  const auto s = make_series(1, 2, {{{1, 0, 1.0}}, {{0, 2, 1.0}}});
  EXPECT_THROW(enumerate_routes(s, 1, 2, 5), ValidationError);
}

TEST(Oracle, DominatesEveryAlgorithm) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int g = 0; g < 60; ++g) {
    const auto s = random_toy_series(rng, 4, 6, 0.55);
    const NodeId a = s.roster.find_station("A"), b = s.roster.find_station("B");
    RouteSet set;
    try {
      set = enumerate_routes(s, a, b, s.roster.num_nodes());
    } catch (const ValidationError&) {
      continue;
    }
    if (set.delays.infeasible_slot()) continue;
    const auto d = build_link_details(s);
    for (double eta : {1.0, 10.0, 1000.0}) {
      const double best = dp_optimal(set.delays, eta).cost;
      for (auto algo : kAllAlgorithms) {
        const auto sel = to_selection(run_algorithm(algo, s, d, a, b, RunParams{eta, std::nullopt, kInf}), set);
        ASSERT_TRUE(sel);
        EXPECT_LE(best, eta_le(set.delays, *sel, eta)) << to_string(algo);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(Oracle, ToSelectionNeedsFullCoverage) {
  const auto s = make_series(2, 2, {square(10, 12), {}});
  const auto set = enumerate_routes(s, G1, G2, 2);
  EXPECT_FALSE(to_selection(ilsr(s, G1, G2), set));
}

TEST(Oracle, CheckReportIsClean) {
  ExperimentConfig c;
  c.oracle.instances = 300;
  c.oracle.toy_graphs = 20;
  const auto rep = run_oracle_check(c);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
  EXPECT_EQ(rep.instances, 300);
  EXPECT_GT(rep.single_route_checks, 0);
  EXPECT_GT(rep.dominance_checks, 0);
}

TEST(DelayMatrixIo, RoundTripAndParsing) {
  const DelayMatrix d({{26.125, kInf, 3}, {0.5, 1e-3, 27}});
  std::stringstream buf;
  write_delay_matrix(d, buf);
  EXPECT_EQ(buf.str(), "26.125,inf,3\n0.5,0.001,27\n");
  EXPECT_EQ(read_delay_matrix(buf), d);
  std::istringstream loose("# routes\n1, 2  inf\n\n4 5 6 # tail\n");
  EXPECT_EQ(read_delay_matrix(loose), DelayMatrix({{1, 2, kInf}, {4, 5, 6}}));
  std::istringstream bad("1,x\n");
  EXPECT_THROW(read_delay_matrix(bad), ValidationError);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_delay_matrix(ragged), ValidationError);
}

}  // namespace
}  // namespace leosim
