#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "futurity/chain_oracle.hpp"
#include "futurity/closed_form.hpp"
#include "futurity/errors.hpp"
#include "futurity/machine_models.hpp"

namespace futurity {
namespace {

double total(const MultipointDistribution& d) {
  double t = 0.0;
  for (const auto& e : d.entries()) t += e.probability;
  return t;
}

TEST(Mills, PublishedTables) {
  const auto [e, o] = mills_modes();
  const std::vector<double> rewards = {0, 3, 5, 10, 14, 18, 150};
  ASSERT_EQ(e.entries().size(), 7u);
  ASSERT_EQ(o.entries().size(), 7u);
  const double pe[] = {0.968, 0.003, 0.007, 0.018, 0.004, 0.0, 0.0};
  const double po[] = {0.357, 0.576, 0.064, 0.0, 0.0, 0.002, 0.001};
  for (std::size_t k = 0; k < 7; ++k) {
    EXPECT_EQ(e.entries()[k].reward, rewards[k]);
    EXPECT_EQ(o.entries()[k].reward, rewards[k]);
    EXPECT_EQ(e.entries()[k].probability, pe[k]);
    EXPECT_EQ(o.entries()[k].probability, po[k]);
  }
  EXPECT_NEAR(total(e), 1.0, 1e-12);
  EXPECT_NEAR(total(o), 1.0, 1e-12);
  EXPECT_NEAR(win_probability(e), 0.032, 1e-12);
  EXPECT_NEAR(win_probability(o), 0.643, 1e-12);
  EXPECT_EQ(mills_machine().arm_a.name, "E");
  EXPECT_EQ(mills_machine().arm_b.name, "O");
}

TEST(Mills, Reductions) {
  const auto [e, o] = mills_modes();
  const TwoPointArm fe = fair_two_point(e), fo = fair_two_point(o);
  EXPECT_NEAR(fe.u, 1.49186992, 1e-8);
  EXPECT_NEAR(fo.u, 1.26308032, 1e-8);
  EXPECT_NEAR(fe.u, fair_payout(0.032), 1e-15);
  const TwoPointArm ee = empirical_two_point(e), eo = empirical_two_point(o);
  EXPECT_NEAR(ee.u, 8.75, 1e-12);
  EXPECT_NEAR(eo.u, 3.47433904, 1e-8);
  EXPECT_NEAR(ee.p, 0.032, 1e-12);
}

TEST(Mills, FairArmsAreFairAlone) {
  const Machine m = mills_machine();
  for (const char* labels : {"A", "B", "AAAA"}) {
    EXPECT_NEAR(oracle_profit(machine_spec(m, labels, Reduction::kFair)).casino_profit, 0.0, 1e-12) << labels;
  }
}

TEST(Mills, TwoArmedFairProfitMatchesClosedForm) {
  const Machine m = mills_machine();
  const ArmProbabilities probs(0.032, 0.643);
  for (const char* labels : {"AB", "AABB", "AAABB", "AAAABBBBAAAAAABBB"}) {
    const double oracle = oracle_profit(machine_spec(m, labels, Reduction::kFair)).casino_profit;
    EXPECT_GT(oracle, 0.0);
    EXPECT_NEAR(oracle, exact_profit(Strategy::parse(labels), probs).profit, 1e-12) << labels;
  }
  EXPECT_NEAR(oracle_profit(machine_spec(m, "AB", Reduction::kFair)).casino_profit, 0.213608367, 1e-9);
}

TEST(Mills, EmpiricalAndRawReductions) {
  const Machine m = mills_machine();
  EXPECT_NEAR(oracle_profit(machine_spec(m, "A", Reduction::kEmpirical)).casino_profit, -0.232, 1e-3);
  EXPECT_NEAR(oracle_profit(machine_spec(m, "B", Reduction::kEmpirical)).casino_profit, -1.42, 1e-2);
  // Raw and empirical arms share win probability and mean payout, so their profits coincide.
  for (const char* labels : {"A", "B", "AB", "AABB"}) {
    EXPECT_NEAR(oracle_profit(machine_spec(m, labels, Reduction::kRaw)).casino_profit,
                oracle_profit(machine_spec(m, labels, Reduction::kEmpirical)).casino_profit, 1e-12);
  }
}

TEST(Reduction, Names) {
  EXPECT_EQ(parse_reduction("fair"), Reduction::kFair);
  EXPECT_EQ(parse_reduction("empirical"), Reduction::kEmpirical);
  EXPECT_EQ(parse_reduction("raw"), Reduction::kRaw);
  EXPECT_EQ(reduction_name(Reduction::kEmpirical), "empirical");
  EXPECT_THROW(parse_reduction("calibrated"), ValidationError);
}

TEST(MultipointDistribution, Validation) {
  EXPECT_THROW(MultipointDistribution({}), InvalidDistribution);
  EXPECT_THROW(MultipointDistribution({{0.0, 0.5}, {1.0, 0.5 + 1e-9}}), InvalidDistribution);
  EXPECT_THROW(MultipointDistribution({{0.0, 0.5}, {0.0, 0.5}}), InvalidDistribution);
  EXPECT_THROW(MultipointDistribution({{-1.0, 0.5}, {1.0, 0.5}}), InvalidDistribution);
  EXPECT_THROW(MultipointDistribution({{0.0, 1.5}, {1.0, -0.5}}), InvalidDistribution);
  EXPECT_NO_THROW(MultipointDistribution({{0.0, 0.5}, {1.0, 0.5 + 1e-13}}));
}

TEST(MultipointDistribution, DegenerateModes) {
  const MultipointDistribution never({{0.0, 1.0}});
  const MultipointDistribution always({{2.0, 1.0}});
  EXPECT_THROW(fair_two_point(never), DegenerateMode);
  EXPECT_THROW(fair_two_point(always), DegenerateMode);
  EXPECT_THROW(empirical_two_point(never), DegenerateMode);
  EXPECT_EQ(empirical_two_point(always).u, 2.0);
}

TEST(MachineFile, ParsesCommentsAndSections) {
  const Machine m = parse_machine(
      "# test machine\n"
      "mode X   # first\n"
      "0 0.25\n"
      "  4 0.75\n"
      "\n"
      "mode Y\n"
      "0 0.5\n"
      "1 0.5\n");
  EXPECT_EQ(m.arm_a.name, "X");
  EXPECT_EQ(m.arm_b.name, "Y");
  EXPECT_EQ(m.arm_a.distribution.entries().size(), 2u);
  EXPECT_EQ(m.arm_a.distribution.entries()[1].reward, 4.0);
}

TEST(MachineFile, ParseErrors) {
  EXPECT_THROW(parse_machine("mode E\n0 1\n"), InvalidDistribution);
  EXPECT_THROW(parse_machine("0 1\nmode E\n0 1\nmode O\n0 1\n"), InvalidDistribution);
  EXPECT_THROW(parse_machine("mode E\n0 abc\nmode O\n0 1\n"), InvalidDistribution);
  EXPECT_THROW(parse_machine("mode E\n0 1 2\nmode O\n0 1\n"), InvalidDistribution);
  EXPECT_THROW(parse_machine("mode\n0 1\nmode O\n0 1\n"), InvalidDistribution);
  EXPECT_THROW(parse_machine("mode E\n0 0.4\nmode O\n0 1\n"), InvalidDistribution);
  EXPECT_THROW(load_machine("/nonexistent/machine.txt"), ValidationError);
}

TEST(MachineFile, MillsRoundTripIsBitExact) {
  const Machine m = mills_machine();
  const std::string text = format_machine(m);
  EXPECT_TRUE(parse_machine(text) == m);
  EXPECT_EQ(format_machine(parse_machine(text)), text);
}

TEST(MachineFile, RandomRoundTripIsBitExact) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RewardEntry> a, b;
    double rest_a = 1.0, rest_b = 1.0;
    for (int k = 0; k < 4; ++k) {
      const double pa = rest_a * u(rng) * 0.5, pb = rest_b * u(rng) * 0.5;
      a.push_back({k * 1.7 + u(rng), pa});
      b.push_back({k * 3.1 + u(rng) * 1e-3, pb});
      rest_a -= pa;
      rest_b -= pb;
    }
    a.push_back({100.0, rest_a});
    b.push_back({200.0, rest_b});
    const Machine m{{"P", MultipointDistribution(a)}, {"Q", MultipointDistribution(b)}};
    ASSERT_TRUE(parse_machine(format_machine(m)) == m);
  }
}

TEST(MachineFile, LoadFromDisk) {
  const std::string path = ::testing::TempDir() + "futurity_machine.txt";
  {
    std::ofstream out(path);
    out << format_machine(mills_machine());
  }
  EXPECT_TRUE(load_machine(path) == mills_machine());
  std::remove(path.c_str());
}

}  // namespace
}  // namespace futurity
