#include "futurity/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "futurity/errors.hpp"
#include "futurity/parallel.hpp"
#include "futurity/rng.hpp"

namespace futurity {

namespace {

// Cumulative sampling table for one arm. The last cumulative entry is pinned
// to 1 so a draw in [0, 1) always lands on an outcome.
struct SamplingTable {
  std::vector<double> cumulative;
  std::vector<double> rewards;

  explicit SamplingTable(const ArmModel& arm) {
    double total = 0.0;
    for (const Outcome& o : arm.outcomes()) total += o.probability;
    double running = 0.0;
    for (const Outcome& o : arm.outcomes()) {
      running += o.probability / total;
      cumulative.push_back(running);
      rewards.push_back(o.reward);
    }
    cumulative.back() = 1.0;
  }

  double draw(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return rewards[static_cast<std::size_t>(it - cumulative.begin())];
  }
};

}  // namespace

double Ledger::literal_mean_profit(int threshold) const noexcept {
  if (coups_played == 0) return 0.0;
  const double m = static_cast<double>(coups_played);
  return (m - static_cast<double>(win_count) - threshold * static_cast<double>(futurity_events)) / m;
}

void SimConfig::validate() const {
  if (coups == 0) throw ValidationError("coups must be >= 1");
  if (replications == 0) throw ValidationError("replications must be >= 1");
  if (trajectory_stride == 0) throw ValidationError("trajectory stride must be >= 1");
}

SimRun simulate_once(const ChainSpec& spec, std::uint64_t coups, std::uint64_t seed, std::uint64_t stride) {
  if (coups == 0) throw ValidationError("coups must be >= 1");
  const std::vector<const ArmModel*> arms = spec.positions();

  // One table per distinct arm; positions refer to them by index.
  std::vector<const ArmModel*> distinct;
  std::vector<SamplingTable> tables;
  std::vector<std::size_t> table_of(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), arms[i]);
    if (it == distinct.end()) {
      distinct.push_back(arms[i]);
      tables.emplace_back(*arms[i]);
      it = distinct.end() - 1;
    }
    table_of[i] = static_cast<std::size_t>(it - distinct.begin());
  }

  SimRun run;
  if (stride > 0) run.trajectory.reserve(static_cast<std::size_t>(coups / stride));

  CounterRng rng(seed);
  Ledger& ledger = run.ledger;
  const auto threshold = static_cast<unsigned>(spec.threshold);
  const double award = static_cast<double>(spec.threshold);
  const std::size_t period = arms.size();
  std::size_t position = 0;
  unsigned streak = 0;

  for (std::uint64_t t = 1; t <= coups; ++t) {
    ledger.stakes_collected += spec.stake;
    const double reward = tables[table_of[position]].draw(rng.uniform());
    if (reward > 0.0) {
      ledger.win_payouts += reward;
      ++ledger.win_count;
      streak = 0;
    } else if (++streak == threshold) {
      ledger.futurity_refunds += award;
      ++ledger.futurity_events;
      streak = 0;
    }
    if (++position == period) position = 0;
    if (stride > 0 && t % stride == 0) run.trajectory.push_back({t, ledger.casino_profit()});
  }
  ledger.coups_played = coups;
  return run;
}

std::vector<TrajectoryPoint> cumulative_trajectory(const ChainSpec& spec, std::uint64_t coups, std::uint64_t seed,
                                                   std::uint64_t stride) {
  if (stride == 0) throw ValidationError("trajectory stride must be >= 1");
  return simulate_once(spec, coups, seed, stride).trajectory;
}

SimResult replicate(const ChainSpec& spec, const SimConfig& config) {
  config.validate();
  spec.validate();

  const auto reps = static_cast<std::size_t>(config.replications);
  SimResult result;
  result.replication_means.resize(reps);
  result.replication_literal_means.resize(reps);

  parallel_for(reps, config.threads, [&](std::size_t k) {
    const std::uint64_t stride = (k == 0 && config.record_trajectory) ? config.trajectory_stride : 0;
    SimRun run = simulate_once(spec, config.coups, split_seed(config.master_seed, k), stride);
    result.replication_means[k] = run.ledger.mean_profit();
    result.replication_literal_means[k] = run.ledger.literal_mean_profit(spec.threshold);
    if (stride > 0) result.trajectory = std::move(run.trajectory);
  });

  // Aggregation in index order keeps the result independent of scheduling.
  double sum = 0.0, literal_sum = 0.0;
  for (std::size_t k = 0; k < reps; ++k) {
    sum += result.replication_means[k];
    literal_sum += result.replication_literal_means[k];
  }
  const double n = static_cast<double>(reps);
  result.grand_mean = sum / n;
  result.literal_grand_mean = literal_sum / n;

  if (reps > 1) {
    double ss = 0.0;
    for (double x : result.replication_means) ss += (x - result.grand_mean) * (x - result.grand_mean);
    result.sd = std::sqrt(ss / (n - 1.0));
    result.se = result.sd / std::sqrt(n);
  }
  return result;
}

}  // namespace futurity
