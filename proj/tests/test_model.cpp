#include <gtest/gtest.h>

#include "cachenet/model.hpp"
#include "support.hpp"

using namespace cachenet;

namespace {

Scenario two_sbs_one_user() {
  auto s = support::tiny_scenario(2, {{50.0, 0.0}});
  support::set_gains(s, {0.5, 0.5});
  return s;
}

}  // namespace

TEST(Model, SinrZeroSignal) {
  const auto s = two_sbs_one_user();
  EXPECT_EQ(sinr(s, {0.0, 2.0}, 0, 0), 0.0);
}

TEST(Model, SinrSingleSbs) {
  auto s = support::tiny_scenario(1, {{0.0, 0.0}});
  support::set_gains(s, {1.0});
  EXPECT_DOUBLE_EQ(sinr(s, {1.0}, 0, 0), 1.0);
}

TEST(Model, SinrWithInterference) {
  const auto s = two_sbs_one_user();
  EXPECT_DOUBLE_EQ(sinr(s, {2.0, 2.0}, 0, 0), 0.5);
}

TEST(Model, SinrIndexOutOfRange) {
  const auto s = two_sbs_one_user();
  EXPECT_THROW(sinr(s, {1.0, 1.0}, 0, 2), UsageError);
  EXPECT_THROW(sinr(s, {1.0, 1.0}, 1, 0), UsageError);
}

TEST(Model, SinrHomogeneousAndMonotone) {
  auto s = two_sbs_one_user();
  support::set_gains(s, {0.3, 0.7});
  const double base = sinr(s, {1.0, 2.0}, 0, 0);
  s.noise_power_w = 4.0;
  EXPECT_NEAR(sinr(s, {4.0, 8.0}, 0, 0), base, 1e-15);
  s.noise_power_w = 1.0;
  EXPECT_GT(sinr(s, {1.5, 2.0}, 0, 0), base);
  EXPECT_LT(sinr(s, {1.0, 2.5}, 0, 0), base);
}

TEST(Model, Rate) {
  auto s = support::tiny_scenario(1, {{0.0, 0.0}});
  support::set_gains(s, {1.0});
  EXPECT_EQ(rate(s, {0.0}, 0, 0), 0.0);
  s.bandwidth_hz = 200e3;
  EXPECT_DOUBLE_EQ(rate(s, {1.0}, 0, 0), 200e3);
  s.bandwidth_hz = 1.0;
  EXPECT_DOUBLE_EQ(rate(s, {3.0}, 0, 0), 2.0);
}

TEST(Model, RelaxedDelayConvertsBytesToBits) {
  auto s = support::tiny_scenario(1, {{0.0, 0.0}});
  s.file_size_bytes = {1e6};
  s.bandwidth_hz = 1e6;  // gamma = 1 gives R = 1 Mb/s
  s.backhaul_mean_s = {0.5};
  CachePlacement hit(1, 1), miss(1, 1);
  hit.set(0, 0);
  EXPECT_DOUBLE_EQ(delivery_delay(s, hit, 0, 0, 0, DelayMode::Relaxed), 8.0);
  EXPECT_DOUBLE_EQ(delivery_delay(s, miss, 0, 0, 0, DelayMode::Relaxed), 8.5);
}

TEST(Model, ExactDelayUsesActualRate) {
  auto s = support::tiny_scenario(1, {{0.0, 0.0}});
  support::set_gains(s, {1.0});
  s.file_size_bytes = {1e6};
  s.bandwidth_hz = 1e6;
  CachePlacement hit(1, 1);
  hit.set(0, 0);
  // gamma = 3 gives r = 2 R
  const PowerVector p{3.0};
  EXPECT_DOUBLE_EQ(delivery_delay(s, hit, 0, 0, 0, DelayMode::Exact, &p), 4.0);
  const PowerVector zero{0.0};
  EXPECT_THROW(delivery_delay(s, hit, 0, 0, 0, DelayMode::Exact, &zero), UsageError);
}

TEST(Model, ServingTime) {
  auto s = support::tiny_scenario(2, {{0.0, 0.0}, {100.0, 0.0}});
  // s / R = 4 s for both users
  s.file_size_bytes = {0.5};
  const DemandMatrix d{{0, 0}};
  const Association x({0, 0}, 2);
  const auto relaxed = serving_time(s, d, x, DelayMode::Relaxed);
  EXPECT_DOUBLE_EQ(relaxed[0], 4.0);
  EXPECT_DOUBLE_EQ(relaxed[1], 4.0);
  const PowerVector p{1.0, 0.0};
  const auto exact = serving_time(s, d, x, DelayMode::Exact, &p);
  EXPECT_EQ(exact[1], 0.0);
  EXPECT_GT(exact[0], 0.0);
}

TEST(Model, ObjectiveHandComputed) {
  // p = 2 W, T = 4 s, d = 4 s + 1 s backhaul
  auto s = support::tiny_scenario(1, {{0.0, 0.0}});
  s.file_size_bytes = {0.5};
  s.backhaul_mean_s = {1.0};
  const DemandMatrix d{{0}};
  const Association x({0}, 1);
  const CachePlacement y(1, 1);
  const auto v = objective(s, d, y, x, {2.0}, 0.5, DelayMode::Relaxed);
  EXPECT_DOUBLE_EQ(v.energy, 8.0);
  EXPECT_DOUBLE_EQ(v.delay, 5.0);
  EXPECT_DOUBLE_EQ(v.weighted, 6.5);
}

TEST(Model, ObjectiveEndpointsAndAffine) {
  auto s = support::tiny_scenario(2, {{10.0, 0.0}, {90.0, 0.0}});
  s.backhaul_mean_s = {1.0, 2.0};
  const DemandMatrix d{{0, 0}};
  const Association x({0, 1}, 2);
  const CachePlacement y(2, 1);
  const PowerVector p{0.5, 0.25};
  const auto e = objective(s, d, y, x, p, 1.0, DelayMode::Relaxed);
  const auto z = objective(s, d, y, x, p, 0.0, DelayMode::Relaxed);
  EXPECT_DOUBLE_EQ(e.weighted, e.energy);
  EXPECT_DOUBLE_EQ(z.weighted, z.delay);
  const auto h = objective(s, d, y, x, p, 0.3, DelayMode::Relaxed);
  EXPECT_NEAR(h.weighted, 0.3 * e.weighted + 0.7 * z.weighted, 1e-14);
}

TEST(Model, ExactDelayAtMostRelaxedWhenSinrHolds) {
  auto s = support::tiny_scenario(2, {{10.0, 0.0}, {90.0, 0.0}});
  const DemandMatrix d{{0, 0}};
  const Association x({0, 1}, 2);
  const CachePlacement y(2, 1);
  support::set_gains(s, {4.0, 0.1, 0.1, 4.0});
  const PowerVector p{1.0, 1.0};
  ASSERT_FALSE(check_feasible(s, d, x, p).has_value());
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_LE(delivery_delay(s, y, i, x.serving(i), 0, DelayMode::Exact, &p),
              delivery_delay(s, y, i, x.serving(i), 0, DelayMode::Relaxed));
}

TEST(Model, CheckFeasible) {
  auto s = support::tiny_scenario(1, {{0.0, 0.0}});
  support::set_gains(s, {1.0});
  const DemandMatrix d{{0}};
  const Association x({0}, 1);
  EXPECT_FALSE(check_feasible(s, d, x, {1.0}).has_value());
  const auto zero = check_feasible(s, d, x, {0.0});
  ASSERT_TRUE(zero.has_value());
  EXPECT_EQ(zero->kind, Violation::Kind::Sinr);
  const auto over = check_feasible(s, d, x, {1.5});
  ASSERT_TRUE(over.has_value());
  EXPECT_EQ(over->kind, Violation::Kind::PowerBound);
  const auto loose = check_feasible(s, d, Association::unassigned(1, 1), {1.0});
  ASSERT_TRUE(loose.has_value());
  EXPECT_EQ(loose->kind, Violation::Kind::Association);
}

TEST(Model, ScenarioValidationListsEveryViolation) {
  auto s = support::tiny_scenario(2, {{0.0, 0.0}});
  s.noise_power_w = 0.0;
  s.bandwidth_hz = -1.0;
  const auto v = s.violations();
  EXPECT_GE(v.size(), 2u);
  EXPECT_THROW(s.validate(), UsageError);
}

TEST(Model, UnitConversions) {
  EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watts(23.0), 0.19952623149688797, 1e-15);
  EXPECT_NEAR(watts_to_dbm(0.001), 0.0, 1e-12);
  EXPECT_NEAR(db_to_linear(10.0), 10.0, 1e-12);
}

TEST(Model, AssociationBasics) {
  Association x({1, Association::kUnassigned}, 2);
  EXPECT_FALSE(x.complete());
  EXPECT_EQ(x.x(0, 1), 1);
  EXPECT_EQ(x.x(1, 0), 0);
  x.assign(1, 0);
  EXPECT_TRUE(x.complete());
  const auto m = x.as_matrix();
  EXPECT_EQ(m(0, 1), 1.0);
  EXPECT_EQ(m(1, 0), 1.0);
  EXPECT_THROW(x.assign(0, 2), UsageError);
}
