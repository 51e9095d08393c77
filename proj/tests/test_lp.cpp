#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cachenet/lp.hpp"
#include "support.hpp"

using namespace cachenet;

namespace {

LinearProgram one_var(Sense s, double cost) {
  LinearProgram lp(s, 0, 1);
  lp.cost[0] = cost;
  return lp;
}

void add_row(LinearProgram& lp, std::vector<double> coef, RowSense sense, double rhs) {
  Matrix<double> rows(lp.row_count() + 1, lp.var_count());
  for (std::size_t r = 0; r < lp.row_count(); ++r)
    for (std::size_t c = 0; c < lp.var_count(); ++c) rows(r, c) = lp.rows(r, c);
  for (std::size_t c = 0; c < lp.var_count(); ++c) rows(lp.row_count(), c) = coef[c];
  lp.rows = rows;
  lp.rhs.push_back(rhs);
  lp.row_sense.push_back(sense);
}

}  // namespace

TEST(Lp, MaximiseBoundedByRow) {
  auto lp = one_var(Sense::Maximize, 1.0);
  add_row(lp, {1.0}, RowSense::LessEqual, 5.0);
  const auto res = solve_lp(lp);
  const auto* opt = std::get_if<LpOptimal>(&res);
  ASSERT_NE(opt, nullptr);
  EXPECT_NEAR(opt->x[0], 5.0, 1e-12);
  EXPECT_NEAR(opt->objective, 5.0, 1e-12);
  EXPECT_NEAR(opt->duals[0], 1.0, 1e-12);
  EXPECT_EQ(support::dual_violation(lp, *opt), "");
}

TEST(Lp, UnboundedRay) {
  const auto lp = one_var(Sense::Maximize, 1.0);
  const auto res = solve_lp(lp);
  const auto* unb = std::get_if<LpUnbounded>(&res);
  ASSERT_NE(unb, nullptr);
  ASSERT_EQ(unb->ray.size(), 1u);
  EXPECT_GT(unb->ray[0], 0.0);
}

TEST(Lp, InfeasibleWithCertificate) {
  auto lp = one_var(Sense::Maximize, 0.0);
  add_row(lp, {1.0}, RowSense::LessEqual, -1.0);
  const auto res = solve_lp(lp);
  const auto* inf = std::get_if<LpInfeasible>(&res);
  ASSERT_NE(inf, nullptr);
  EXPECT_EQ(support::farkas_violation(lp, inf->row_multipliers, inf->bound_multipliers), "");
}

TEST(Lp, UpperBoundDual) {
  LinearProgram lp(Sense::Maximize, 1, 2);
  lp.cost = {3.0, 2.0};
  lp.rows(0, 0) = 1.0;
  lp.rows(0, 1) = 1.0;
  lp.rhs[0] = 4.0;
  lp.upper[0] = 1.5;
  const auto res = solve_lp(lp);
  const auto& opt = std::get<LpOptimal>(res);
  EXPECT_NEAR(opt.x[0], 1.5, 1e-12);
  EXPECT_NEAR(opt.x[1], 2.5, 1e-12);
  EXPECT_NEAR(opt.objective, 9.5, 1e-12);
  EXPECT_NEAR(opt.duals[0], 2.0, 1e-12);
  EXPECT_NEAR(opt.bound_duals[0], 1.0, 1e-12);
  EXPECT_EQ(support::dual_violation(lp, opt), "");
}

TEST(Lp, FreeVariableAndEquality) {
  // min x0 + x1, x0 free, x0 - x1 = -3, x1 <= 10 -> x1 = 0, x0 = -3
  LinearProgram lp(Sense::Minimize, 1, 2);
  lp.cost = {1.0, 1.0};
  lp.lower[0] = -kInf;
  lp.rows(0, 0) = 1.0;
  lp.rows(0, 1) = -1.0;
  lp.rhs[0] = -3.0;
  lp.row_sense[0] = RowSense::Equal;
  const auto res = solve_lp(lp);
  const auto& opt = std::get<LpOptimal>(res);
  EXPECT_NEAR(opt.x[0], -3.0, 1e-12);
  EXPECT_NEAR(opt.x[1], 0.0, 1e-12);
  EXPECT_EQ(support::dual_violation(lp, opt), "");
}

TEST(Lp, FreeVariableUnboundedBelow) {
  auto lp = one_var(Sense::Minimize, 1.0);
  lp.lower[0] = -kInf;
  const auto res = solve_lp(lp);
  const auto& unb = std::get<LpUnbounded>(res);
  EXPECT_LT(unb.ray[0], 0.0);
}

TEST(Lp, BealeCyclingExampleTerminates) {
  // classic example on which textbook Dantzig pricing cycles
  LinearProgram lp(Sense::Minimize, 3, 4);
  lp.cost = {-0.75, 150.0, -0.02, 6.0};
  const double a[3][4] = {{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0}, {0.0, 0.0, 1.0, 0.0}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) lp.rows(r, c) = a[r][c];
  lp.rhs = {0.0, 0.0, 1.0};
  const auto res = solve_lp(lp);
  const auto& opt = std::get<LpOptimal>(res);
  EXPECT_NEAR(opt.objective, -0.05, 1e-12);
}

TEST(Lp, BadlyScaledRowsStillSolve) {
  // min 1e-7 x s.t. 1e-5 x >= 3e-15: the answer is 3e-10 with objective 3e-17
  auto lp = one_var(Sense::Minimize, 1e-7);
  add_row(lp, {1e-5}, RowSense::GreaterEqual, 3e-15);
  add_row(lp, {1.0}, RowSense::LessEqual, 0.2);
  const auto res = solve_lp(lp);
  const auto& opt = std::get<LpOptimal>(res);
  EXPECT_NEAR(opt.x[0] / 3e-10, 1.0, 1e-12);
  EXPECT_NEAR(opt.objective / 3e-17, 1.0, 1e-12);
}

TEST(Lp, RejectsMalformedInput) {
  LinearProgram lp(Sense::Minimize, 1, 2);
  lp.rhs.push_back(1.0);
  EXPECT_THROW(solve_lp(lp), UsageError);
  LinearProgram bad_lower(Sense::Minimize, 0, 1);
  bad_lower.lower[0] = 1.0;
  EXPECT_THROW(solve_lp(bad_lower), UsageError);
  LinearProgram nan_cost(Sense::Minimize, 0, 1);
  nan_cost.cost[0] = std::nan("");
  EXPECT_THROW(solve_lp(nan_cost), UsageError);
}

TEST(Lp, DeterministicResults) {
  std::mt19937_64 rng(7);
  const auto lp = support::random_lp(rng, 6, 7);
  const auto a = solve_lp(lp), b = solve_lp(lp);
  ASSERT_EQ(a.index(), b.index());
  if (const auto* oa = std::get_if<LpOptimal>(&a)) {
    EXPECT_EQ(oa->x, std::get<LpOptimal>(b).x);
    EXPECT_EQ(oa->duals, std::get<LpOptimal>(b).duals);
  }
}

TEST(Lp, WriteLpFixedFormat) {
  LinearProgram lp(Sense::Maximize, 1, 2);
  lp.cost = {1.0, 0.5};
  lp.rows(0, 0) = 2.0;
  lp.rows(0, 1) = -1.0;
  lp.rhs[0] = 4.0;
  lp.row_sense[0] = RowSense::GreaterEqual;
  lp.upper[1] = 3.0;
  std::ostringstream os;
  write_lp(os, lp);
  EXPECT_EQ(os.str(),
            "sense max\nvars 2\nrows 1\ncost 1 0.5\nrow >= 4 : 2 -1\nlower 0 0\nupper inf 3\n");
}

TEST(Lp, RandomInstancesMatchEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const auto lp = support::random_lp(rng, dim(rng), dim(rng));
    const auto truth = support::enumerate_lp(lp);
    const auto res = solve_lp(lp);
    SCOPED_TRACE("trial " + std::to_string(trial));
    switch (truth.status) {
      case support::EnumeratedLp::Status::Optimal: {
        ++counts[0];
        const auto* opt = std::get_if<LpOptimal>(&res);
        ASSERT_NE(opt, nullptr);
        EXPECT_NEAR(opt->objective, truth.objective, 1e-8 * (1.0 + std::abs(truth.objective)));
        EXPECT_EQ(support::primal_violation(lp, opt->x, 1e-9), "");
        EXPECT_EQ(support::dual_violation(lp, *opt), "");
        break;
      }
      case support::EnumeratedLp::Status::Unbounded: {
        ++counts[1];
        const auto* unb = std::get_if<LpUnbounded>(&res);
        ASSERT_NE(unb, nullptr);
        EXPECT_EQ(support::primal_violation(lp, unb->point, 1e-9), "");
        EXPECT_EQ(support::primal_violation(lp, unb->ray, 1e-9, true), "");
        double gain = 0.0;
        for (std::size_t j = 0; j < lp.var_count(); ++j) gain += lp.cost[j] * unb->ray[j];
        EXPECT_GT(lp.sense == Sense::Maximize ? gain : -gain, 1e-9);
        break;
      }
      case support::EnumeratedLp::Status::Infeasible: {
        ++counts[2];
        const auto* inf = std::get_if<LpInfeasible>(&res);
        ASSERT_NE(inf, nullptr);
        EXPECT_EQ(support::farkas_violation(lp, inf->row_multipliers, inf->bound_multipliers), "");
        break;
      }
    }
  }
  EXPECT_GT(counts[0], 30);
  EXPECT_GT(counts[1], 5);
  EXPECT_GT(counts[2], 30);
}
