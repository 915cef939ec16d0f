#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace leosim {
namespace {

using testing::G1;
using testing::G2;
using testing::make_series;
using testing::square;

TEST(Metrics, ExampleSelection) {
  const auto d = example_delay_matrix();
  const auto s = example_selection();
  EXPECT_EQ(eta_delay(d, s), 104.0);
  EXPECT_EQ(eta_penalty(s, 7.0), 14.0);
  EXPECT_EQ(eta_le(d, s, 7.0), 118.0);
  EXPECT_EQ(route_change_rate(s), 50.0);
}

TEST(Metrics, SelectionMatrixValidation) {
  EXPECT_THROW(SelectionMatrix::from_rows({{1, 1}, {0, 1}}), ValidationError);
  EXPECT_THROW(SelectionMatrix::from_rows({{1, 0}, {0, 0}}), ValidationError);
  EXPECT_THROW(SelectionMatrix::from_rows({{2, 0}, {0, 1}}), ValidationError);
  const DelayMatrix d({{1, kInf}, {1, 1}});
  EXPECT_FALSE(SelectionMatrix::from_rows({{1, 1}, {0, 0}}).feasible_for(d));
  EXPECT_THROW(eta_delay(d, SelectionMatrix::from_rows({{1, 1}, {0, 0}})), ValidationError);
}

TEST(Metrics, InstantaneousLatency) {
  const auto t = SlotTrace::from_selection(example_delay_matrix(), example_selection());
  const auto l = instantaneous_latency_series(t, 10.0);
  EXPECT_EQ(valid_values(l), (std::vector<double>{26, 27, 35, 36}));
  double sum = 0.0;
  for (double x : valid_values(l)) sum += x;
  EXPECT_EQ(sum, 124.0);
  EXPECT_EQ(sum, eta_le(example_delay_matrix(), example_selection(), 10.0));
}

TEST(Metrics, FirstSlotCarriesNoSetup) {
  const auto t = SlotTrace::from_selection(DelayMatrix({{5, 5}, {5, 5}}), SelectionMatrix(2, {1, 0}));
  EXPECT_EQ(valid_values(instantaneous_latency_series(t, 100.0)), (std::vector<double>{5, 105}));
}

TEST(Metrics, Outage) {
  EXPECT_DOUBLE_EQ(outage_probability(std::vector<double>{10, 50, 20}, 30.0), 1.0 / 3);
  EXPECT_EQ(outage_probability(std::vector<double>{10, 30}, 30.0), 0.0);  // strict
  std::vector<std::optional<double>> gappy{10.0, std::nullopt, 50.0};
  EXPECT_EQ(outage_probability(gappy, 30.0), 0.5);
  EXPECT_THROW(outage_probability(std::vector<double>{1}, 0.0), ValidationError);
  EXPECT_THROW(outage_probability(std::vector<std::optional<double>>{std::nullopt}, 1.0), ValidationError);
}

TEST(Metrics, Jitter) {
  EXPECT_EQ(average_jitter(std::vector<double>{1, 2, 4}), 1.5);
  EXPECT_EQ(average_jitter(std::vector<double>(10, 27.0)), 0.0);
  std::vector<double> spike(600, 27.0);
  spike[299] = 1027.0;
  EXPECT_DOUBLE_EQ(average_jitter(spike), 2000.0 / 599);
  std::vector<std::optional<double>> gappy{1.0, 3.0, std::nullopt, 10.0, 11.0};
  EXPECT_EQ(average_jitter(gappy), 1.5);
  EXPECT_THROW(average_jitter(std::vector<double>{1}), ValidationError);
}

TEST(Metrics, HistogramBins) {
  const auto h = histogram(std::vector<double>{0.1, 0.24, 0.25, 1.0}, 0.25);
  using Bin = std::pair<long, std::size_t>;
  EXPECT_EQ(h.bins, (std::vector<Bin>{{0, 2}, {1, 1}, {4, 1}}));
  EXPECT_EQ(h.total(), 4u);
  EXPECT_EQ(h.center(4), 1.125);
  EXPECT_THROW(histogram(std::vector<double>{}, 0.25), ValidationError);
  EXPECT_THROW(histogram(std::vector<double>{1}, 0.0), ValidationError);
}

TEST(Metrics, Lobes) {
  std::vector<double> v{27.1, 27.2, 27.3, 27.3, 27.6, 1027.2, 1027.3};
  const auto lobes = split_lobes(histogram(v, 0.25));
  ASSERT_TRUE(lobes);
  EXPECT_EQ(lobes->lower_mode, 27.125);
  EXPECT_EQ(lobes->upper_mode, 1027.125);
  EXPECT_EQ(lobes->lower_count, 5u);
  EXPECT_EQ(lobes->upper_count, 2u);
  EXPECT_EQ(lobes->separation(), 1000.0);
  EXPECT_FALSE(split_lobes(histogram(std::vector<double>{1.0, 1.3}, 0.25)));
  EXPECT_FALSE(split_lobes(histogram(std::vector<double>{1.0}, 0.25)));
}

TEST(Metrics, TraceFromScheduleIgnoresGaps) {
  const auto s = make_series(2, 2, {square(10, 12), {}, square(14, 12), square(14, 12)});
  const auto sched = ilsr(s, G1, G2);
  const auto t = SlotTrace::from_schedule(sched);
  EXPECT_EQ(valid_slots(t), 3);
  EXPECT_EQ(switch_count(t), 0);
  const auto m = evaluate(sched, 10.0, {13.0});
  EXPECT_EQ(m.reachable_slots, 3);
  EXPECT_EQ(m.coverage(), 0.75);
  EXPECT_EQ(m.mean_delay_ms, 34.0 / 3);
  EXPECT_EQ(m.lambda_pct, 0.0);
  EXPECT_EQ(m.jitter_ms, 0.0);
  EXPECT_EQ(m.outage.front().second, 0.0);
}

SlotTrace random_trace(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> delay(25.0, 30.0);
  std::bernoulli_distribution gap(0.1), change(0.3);
  SlotTrace t;
  for (int i = 0; i < n; ++i) {
    if (gap(rng)) {
      t.delay_ms.push_back(std::nullopt);
      t.switch_into.push_back(0);
      continue;
    }
    t.delay_ms.push_back(delay(rng));
    const bool prev = i > 0 && t.delay_ms[static_cast<std::size_t>(i - 1)];
    t.switch_into.push_back(prev && change(rng));
  }
  return t;
}

TEST(MetricsProperties, TotalIsDelayPlusPenalty) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto t = random_trace(rng, 50);
    for (double eta : {1.0, 10.0, 1000.0}) {
      const auto m = evaluate(t, eta);
      if (m.reachable_slots == 0) continue;
      EXPECT_NEAR(m.eta_le_ms, m.eta_delay_ms + eta * m.route_changes, 1e-9);
      EXPECT_NEAR(m.mean_le_ms, m.mean_delay_ms + eta * m.lambda_pct / 100.0, 1e-9);
      double sum = 0.0;
      for (double x : valid_values(m.latency_ms)) sum += x;
      EXPECT_NEAR(sum, m.eta_le_ms, 1e-9);
      EXPECT_GE(m.lambda_pct, 0.0);
      EXPECT_LE(m.lambda_pct, 100.0 * (m.reachable_slots - 1) / m.reachable_slots + 1e-12);
    }
  }
}

TEST(MetricsProperties, JitterGrowsOnceSetupDominates) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto t = random_trace(rng, 40);
    // delays lie in [25, 30], so every consecutive difference is below 5
    double prev = -1.0;
    for (double eta : {5.0, 10.0, 100.0, 1000.0}) {
      const double j = evaluate(t, eta).jitter_ms;
      EXPECT_GE(j, prev - 1e-9);
      prev = j;
    }
  }
}

}  // namespace
}  // namespace leosim
