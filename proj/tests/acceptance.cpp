// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
//   acceptance            run criteria 1-9
//   acceptance 3 8        run a subset

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "futurity/chain_oracle.hpp"
#include "futurity/closed_form.hpp"
#include "futurity/experiments.hpp"
#include "futurity/machine_models.hpp"
#include "futurity/parallel.hpp"
#include "futurity/rng.hpp"
#include "futurity/simulator.hpp"
#include "support/brute_force.hpp"

using namespace futurity;
namespace fx = futurity::experiments;

namespace {

// Seeds are fixed once and never tuned.
constexpr std::uint64_t kFairnessSeed = 20'001;
constexpr std::uint64_t kWorkedSeed = 20'003;
constexpr std::uint64_t kMixtureSeed = 20'006;
constexpr std::uint64_t kFullScaleSeed = 20'007;
constexpr std::uint64_t kTrajectorySeed = 1936;
constexpr std::uint64_t kDeterminismSeed = 20'009;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& text) {
    if (pass) detail += (detail.empty() ? "" : "; ") + text;
  }
};

std::string fmt(double x) { return fx::format_number(x); }

unsigned threads() { return default_thread_count(); }

SimResult monte_carlo(const ChainSpec& spec, std::uint64_t coups, std::uint64_t reps, std::uint64_t seed) {
  SimConfig config;
  config.coups = coups;
  config.replications = reps;
  config.master_seed = seed;
  config.threads = threads();
  return replicate(spec, config);
}

double z_score(const SimResult& r, double target) { return (r.grand_mean - target) / r.se; }

// 1. Closed form and rate route against the chain oracle, every pattern of length 2..12.
Verdict criterion_1() {
  Verdict out;
  std::vector<std::string> patterns;
  for (std::size_t n = 2; n <= 12; ++n) testing::for_each_pattern(n, [&](const std::string& s) { patterns.push_back(s); });
  const std::vector<double> grid = fx::probability_grid(0.1);

  std::vector<double> worst_closed(patterns.size(), 0.0), worst_rates(patterns.size(), 0.0);
  parallel_for(patterns.size(), threads(), [&](std::size_t k) {
    const Strategy d = Strategy::parse(patterns[k]);
    for (double pa : grid)
      for (double pb : grid) {
        const ArmProbabilities probs(pa, pb);
        const double oracle = oracle_profit(fair_two_armed_spec(patterns[k], pa, pb)).casino_profit;
        worst_closed[k] = std::max(worst_closed[k], std::abs(exact_profit(d, probs).profit - oracle));
        worst_rates[k] = std::max(worst_rates[k], std::abs(profit_via_rates(d, probs) - oracle));
      }
  });
  double wt = 0.0, wr = 0.0;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    wt = std::max(wt, worst_closed[k]);
    wr = std::max(wr, worst_rates[k]);
  }
  out.require(wt <= 1e-9, "closed form max diff " + fmt(wt));
  out.require(wr <= 1e-9, "rate route max diff " + fmt(wr));
  out.note(std::to_string(patterns.size()) + " patterns x 81 cells; max diffs " + fmt(wt) + ", " + fmt(wr));
  return out;
}

// 2. Single fair arms: zero oracle profit, zero Monte Carlo profit.
Verdict criterion_2() {
  Verdict out;
  double worst = 0.0;
  for (int k = 1; k <= 99; ++k) {
    const double p = k / 100.0;
    ChainSpec spec;
    spec.labels = "A";
    spec.arms.emplace('A', ArmModel::two_point(p, fair_payout(p)));
    worst = std::max(worst, std::abs(oracle_profit(spec).casino_profit));
  }
  out.require(worst <= 1e-12, "oracle max |R| " + fmt(worst));

  double worst_z = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    ChainSpec spec;
    spec.labels = "A";
    spec.arms.emplace('A', ArmModel::two_point(p, fair_payout(p)));
    const SimResult r = monte_carlo(spec, 100'000, 1000, split_seed(kFairnessSeed, static_cast<std::uint64_t>(k)));
    const double z = z_score(r, 0.0);
    worst_z = std::max(worst_z, std::abs(z));
    out.require(std::abs(z) <= 3.0, "p=" + fmt(p) + " z=" + fmt(z));
  }
  out.note("oracle max |R| " + fmt(worst) + "; Monte Carlo max |z| " + fmt(worst_z));
  return out;
}

// 3. Worked values by closed form, chain oracle and Monte Carlo.
Verdict criterion_3() {
  Verdict out;
  const ArmProbabilities probs(0.3, 0.7);
  struct Case {
    const char* labels;
    double expected;
  };
  std::uint64_t index = 0;
  for (const Case c : {Case{"AB", 0.0916430}, Case{"AABB", 0.0079525}}) {
    const double closed = exact_profit(Strategy::parse(c.labels), probs).profit;
    const ChainSpec spec = fair_two_armed_spec(c.labels, 0.3, 0.7);
    const double oracle = oracle_profit(spec).casino_profit;
    const SimResult r = monte_carlo(spec, 100'000, 1000, split_seed(kWorkedSeed, index++));
    const double z = z_score(r, oracle);
    out.require(std::abs(closed - c.expected) <= 1e-6, std::string(c.labels) + " closed form " + fmt(closed));
    out.require(std::abs(oracle - c.expected) <= 1e-6, std::string(c.labels) + " oracle " + fmt(oracle));
    out.require(std::abs(z) <= 3.0, std::string(c.labels) + " Monte Carlo z=" + fmt(z));
    out.note(std::string(c.labels) + ": R=" + fmt(closed) + " oracle=" + fmt(oracle) + " MC=" + fmt(r.grand_mean) +
             " (z=" + fmt(z) + ")");
  }
  return out;
}

// 4. Rotation, repetition, mirror, and block-swap delta.
Verdict criterion_4() {
  Verdict out;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> length(2, 24);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  double rot = 0.0, rep = 0.0, mir = 0.0, del = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Strategy d = Strategy::parse(testing::random_pattern(rng, length(rng)));
    const double pa = prob(rng), pb = prob(rng);
    const ArmProbabilities probs(pa, pb);
    const double base = exact_profit(d, probs).profit;
    for (std::size_t l = 1; l < d.size(); ++l) rot = std::max(rot, std::abs(exact_profit(rotate(d, l), probs).profit - base));
    for (std::size_t k = 2; k <= 3; ++k) rep = std::max(rep, std::abs(exact_profit(repeat(d, k), probs).profit - base));
    mir = std::max(mir, std::abs(exact_profit(mirror(d), ArmProbabilities(pb, pa)).profit - base));
  }
  std::uniform_int_distribution<std::size_t> h_dist(2, 4), run(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> runs(2 * h_dist(rng));
    for (auto& x : runs) x = run(rng);
    const BlockVector blocks = make_blocks(runs);
    const ArmProbabilities probs(prob(rng), prob(rng));
    const double direct =
        exact_profit(from_blocks(blocks), probs).profit - exact_profit(swap_last_blocks(blocks), probs).profit;
    del = std::max(del, std::abs(block_swap_delta(blocks, probs) - direct));
  }
  out.require(rot <= 1e-12, "rotation " + fmt(rot));
  out.require(rep <= 1e-12, "repetition " + fmt(rep));
  out.require(mir <= 1e-12, "mirror " + fmt(mir));
  out.require(del <= 1e-12, "block swap delta " + fmt(del));
  out.note("max deviations rotation " + fmt(rot) + ", repetition " + fmt(rep) + ", mirror " + fmt(mir) + ", delta " +
           fmt(del));
  return out;
}

// 5. R > 0 and Q > 0 off the diagonal, R = 0 on it.
Verdict criterion_5() {
  Verdict out;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> length(2, 40);
  std::uniform_real_distribution<double> prob(0.01, 0.99);
  double min_r = 1.0, min_q = 1e300, diag = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Strategy d = Strategy::parse(testing::random_pattern(rng, length(rng)));
    const double pa = prob(rng);
    double pb = prob(rng);
    while (pb == pa) pb = prob(rng);
    const ProfitReport report = exact_profit(d, ArmProbabilities(pa, pb));
    min_r = std::min(min_r, report.profit);
    min_q = std::min(min_q, report.q);
    diag = std::max(diag, std::abs(exact_profit(d, ArmProbabilities(pa, pa)).profit));
  }
  out.require(min_r > 0.0, "min R " + fmt(min_r));
  out.require(min_q > 0.0, "min Q " + fmt(min_q));
  out.require(diag <= 1e-12, "diagonal |R| " + fmt(diag));
  out.note("min R " + fmt(min_r) + ", min Q " + fmt(min_q) + ", diagonal max |R| " + fmt(diag));
  return out;
}

// 6. Random mixture: sign, worked value, oracle and Monte Carlo.
Verdict criterion_6() {
  Verdict out;
  double min_rc = 1.0;
  for (int g = 0; g <= 10; ++g)
    for (int a = 1; a <= 9; ++a)
      for (int b = 1; b <= 9; ++b)
        min_rc = std::min(min_rc, random_mix_profit(g / 10.0, ArmProbabilities(a / 10.0, b / 10.0)));
  out.require(min_rc >= -1e-15, "min R_C " + fmt(min_rc));

  const double closed = random_mix_profit(0.5, ArmProbabilities(0.3, 0.7));
  const double oracle = random_mix_oracle(0.5, 0.3, 0.7).casino_profit;
  out.require(std::abs(closed - 0.0241327) <= 1e-6, "closed form " + fmt(closed));
  out.require(std::abs(oracle - 0.0241327) <= 1e-6, "oracle " + fmt(oracle));

  // Each coup picks arm A or B independently, then plays it.
  const ChainSpec pair = fair_two_armed_spec("AB", 0.3, 0.7);
  ChainSpec spec;
  spec.labels = "M";
  spec.arms.emplace('M', ArmModel::mixture(0.5, pair.arms.at('A'), pair.arms.at('B')));
  const SimResult r = monte_carlo(spec, 100'000, 1000, kMixtureSeed);
  const double z = z_score(r, oracle);
  out.require(std::abs(z) <= 3.0, "Monte Carlo z=" + fmt(z));
  out.note("grid min R_C " + fmt(min_rc) + "; R_C=" + fmt(closed) + " oracle=" + fmt(oracle) + " MC=" +
           fmt(r.grand_mean) + " (z=" + fmt(z) + ")");
  return out;
}

// 7. Full protocol, M = 1e5, 1e4 replications, four strategies at (0.3, 0.7).
Verdict criterion_7() {
  Verdict out;
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t index = 0;
  for (std::string_view labels : fx::kReferenceStrategies) {
    const ChainSpec spec = fair_two_armed_spec(labels, 0.3, 0.7);
    const double oracle = oracle_profit(spec).casino_profit;
    const SimResult r = monte_carlo(spec, 100'000, 10'000, split_seed(kFullScaleSeed, index++));
    const double z = z_score(r, oracle);
    out.require(std::abs(z) <= 4.0, std::string(labels) + " z=" + fmt(z));
    out.note(std::string(labels) + " z=" + fmt(z));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(seconds < 900.0, "took " + fmt(seconds) + " s");
  out.note(fmt(seconds) + " s");
  return out;
}

// 8. Mills machine constants, fair reductions, two-armed profit and a long session.
Verdict criterion_8() {
  Verdict out;
  const Machine mills = mills_machine();
  out.require(parse_machine(format_machine(mills)) == mills, "table round trip");
  const auto [e, o] = mills_modes();
  out.require(std::abs(win_probability(e) - 0.032) <= 1e-12 && std::abs(win_probability(o) - 0.643) <= 1e-12,
              "win probabilities");

  for (const char* solo : {"A", "B"}) {
    const double r = oracle_profit(machine_spec(mills, solo, Reduction::kFair)).casino_profit;
    out.require(std::abs(r) <= 1e-12, std::string("single arm ") + solo + " profit " + fmt(r));
  }
  std::string profits;
  for (std::string_view labels : fx::kReferenceStrategies) {
    const double r = oracle_profit(machine_spec(mills, labels, Reduction::kFair)).casino_profit;
    out.require(r > 0.0, std::string(labels) + " oracle " + fmt(r));
    profits += std::string(profits.empty() ? "" : ", ") + std::string(labels) + " " + fmt(r);
  }

  const auto points = cumulative_trajectory(machine_spec(mills, "AB", Reduction::kFair), 1'000'000, kTrajectorySeed,
                                            10'000);
  const double final_ab = points.back().cumulative_profit;
  out.require(final_ab > 0.0, "AB trajectory ends at " + fmt(final_ab));
  std::string others;
  for (std::string_view labels : fx::kReferenceStrategies) {
    if (labels == "AB") continue;
    const auto pts = cumulative_trajectory(machine_spec(mills, labels, Reduction::kFair), 1'000'000, kTrajectorySeed,
                                           10'000);
    others += std::string(others.empty() ? "" : ", ") + std::string(labels) + " " + fmt(pts.back().cumulative_profit);
  }
  out.note("oracle " + profits + "; AB trajectory (seed " + std::to_string(kTrajectorySeed) + ") ends at " +
           fmt(final_ab) + "; others " + others);
  return out;
}

// 9. Byte-identical CSV output under 1, 4 and 16 threads.
Verdict criterion_9() {
  Verdict out;
  auto outputs = [](unsigned n) {
    fx::SweepSpec sweep;
    for (std::string_view s : fx::kReferenceStrategies) sweep.strategies.push_back(Strategy::parse(s));
    sweep.threads = n;
    fx::RandomSweepSpec random;
    random.threads = n;
    random.printed_sign = true;
    SimConfig config;
    config.coups = 20'000;
    config.replications = 256;
    config.master_seed = kDeterminismSeed;
    config.threads = n;
    return fx::render_sweep(fx::run_sweep(sweep), fx::Format::kCsv) +
           fx::render_random_sweep(fx::run_random_sweep(random), random, fx::Format::kCsv) +
           fx::render_replications_csv(replicate(fair_two_armed_spec("AAABB", 0.3, 0.7), config));
  };
  const std::string one = outputs(1);
  const std::string again = outputs(1);
  const std::string four = outputs(4);
  const std::string sixteen = outputs(16);
  out.require(one == again, "repeat run differs");
  out.require(one == four, "4 threads differ");
  out.require(one == sixteen, "16 threads differ");
  out.note(std::to_string(one.size()) + " bytes identical across 1/4/16 threads");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria = {criterion_1, criterion_2, criterion_3,
                                                          criterion_4, criterion_5, criterion_6,
                                                          criterion_7, criterion_8, criterion_9};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict result;
    try {
      result = criteria[k]();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s  [%.1f s] %s\n", id, result.pass ? "PASS" : "FAIL", seconds, result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
