#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "lossless/experiment.hpp"
#include "lossless/rng.hpp"

using namespace lossless;

namespace {

ExperimentPlan small_plan(Scenario s) {
  ExperimentPlan plan;
  plan.scenario = s;
  plan.n_grid = {200, 1000};
  plan.reps = 12;
  plan.base_seed = 40;
  return plan;
}

// Upper 99% binomial quantile by summing pmf terms built from ratios.
double margin_oracle(double p, int trials) {
  std::vector<long double> pmf(trials + 1);
  pmf[0] = std::pow(1.0L - p, trials);
  for (int k = 1; k <= trials; ++k) pmf[k] = pmf[k - 1] * (trials - k + 1) / k * p / (1.0L - p);
  long double cdf = 0.0L;
  for (int k = 0; k <= trials; ++k) {
    cdf += pmf[k];
    if (cdf >= 0.99L) return std::max(0.0, static_cast<double>(k) / trials - p);
  }
  return 1.0 - p;
}

// x1, x2 uniform; y from `f`.
template <typename F>
Dataset features(std::size_t n, std::uint64_t seed, F f) {
  const CounterRng rng(seed, 0);
  std::vector<double> v;
  v.reserve(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = rng.uniform(3 * i), x2 = rng.uniform(3 * i + 1), u = rng.uniform(3 * i + 2);
    v.insert(v.end(), {x1, x2, f(x1, x2, u)});
  }
  return Dataset(2, 0, std::move(v));
}

}  // namespace

TEST(BinomialMargin, MatchesDirectSummation) {
  for (double p : {0.001, 0.0533, 0.1, 0.5}) {
    for (int trials : {1, 20, 100, 200}) EXPECT_NEAR(binomial_margin(p, trials), margin_oracle(p, trials), 1e-12);
  }
  EXPECT_EQ(binomial_margin(0.0, 200), 0.0);
  EXPECT_THROW(binomial_margin(0.1, 0), std::invalid_argument);
}

TEST(RunMc, ThreadCountInvariant) {
  for (Scenario s : {Scenario::h0, Scenario::h1}) {
    auto plan = small_plan(s);
    plan.threads = 1;
    const auto a = run_mc(plan);
    plan.threads = 3;
    const auto b = run_mc(plan);
    std::ostringstream ca, cb;
    write_mc_csv(ca, a);
    write_mc_csv(cb, b);
    EXPECT_EQ(ca.str(), cb.str());
    for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].median_L_n, b.rows[i].median_L_n);
  }
}

TEST(RunMc, SingleReplicateRatesAreBinary) {
  auto plan = small_plan(Scenario::h1);
  plan.reps = 1;
  for (const auto& row : run_mc(plan).rows) EXPECT_TRUE(row.rejection_rate == 0.0 || row.rejection_rate == 1.0);
}

TEST(RunMc, RowsCarryBoundsAndBurnIn) {
  auto plan = small_plan(Scenario::h0);
  plan.min_n = 500;
  const auto r = run_mc(plan);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.rows[0].past_burn_in);
  EXPECT_TRUE(r.rows[1].past_burn_in);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.type1_bound, type1_bound(1.5, CubicPartition(h_schedule(row.n, 2, 1, 0.2), 2, 1).m_dprime()));
    EXPECT_NEAR(row.type1_allowance, row.type1_bound + binomial_margin(row.type1_bound, 12), 1e-15);
  }
  std::ostringstream csv;
  write_mc_csv(csv, r);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "n,rejection_rate,mean_Ln,mean_tn,type1_bound");
}

TEST(RunMc, FileScenarioResamples) {
  H0Config g;
  g.n = 500;
  auto plan = small_plan(Scenario::file);
  plan.source = gen_h0(g);
  plan.threads = 2;
  const auto a = run_mc(plan);
  plan.threads = 1;
  const auto b = run_mc(plan);
  EXPECT_EQ(a.rows[1].mean_L_n, b.rows[1].mean_L_n);
}

TEST(ExperimentPlan, Validation) {
  auto plan = small_plan(Scenario::h0);
  plan.n_grid = {100, 100};
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan.n_grid = {};
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan = small_plan(Scenario::file);
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan = small_plan(Scenario::h0);
  plan.reps = 0;
  EXPECT_THROW(plan.validate(), std::invalid_argument);
}

TEST(SelectFeatures, SingleRelevantCoordinate) {
  const auto data = features(100000, 1, [](double x1, double, double u) { return x1 + 0.02 * (u - 0.5); });
  TestConfig cfg;
  cfg.h = 0.1;
  const auto r = select_features(data, cfg);
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(r.trace.front().outcome.reject);
  EXPECT_EQ(r.trace.front().outcome.m_dprime, 1u);
}

TEST(SelectFeatures, IndependentResponseSelectsNothing) {
  const auto data = features(100000, 2, [](double, double, double u) { return u; });
  TestConfig cfg;
  cfg.h = 0.1;
  const auto r = select_features(data, cfg);
  EXPECT_TRUE(r.accepted);
  EXPECT_TRUE(r.selected.empty());
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(SelectFeatures, JointDependenceNeedsEveryCoordinate) {
  // frac(x1 + x2) carries no information about either coordinate alone.
  const auto data = features(1000000, 3, [](double x1, double x2, double) { return std::fmod(x1 + x2, 1.0); });
  TestConfig cfg;
  cfg.h = 1.0 / 16.0;
  const auto r = select_features(data, cfg);
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{0, 1}));
}
