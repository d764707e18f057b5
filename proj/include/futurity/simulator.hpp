#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "futurity/chain_oracle.hpp"

namespace futurity {

/// Running account of one simulated session, from the casino's side.
struct Ledger {
  std::uint64_t coups_played = 0;
  double stakes_collected = 0.0;
  double win_payouts = 0.0;
  double futurity_refunds = 0.0;
  std::uint64_t futurity_events = 0;  // C
  std::uint64_t win_count = 0;        // W, coups with a positive reward

  double casino_profit() const noexcept { return stakes_collected - win_payouts - futurity_refunds; }
  double mean_profit() const noexcept {
    return coups_played == 0 ? 0.0 : casino_profit() / static_cast<double>(coups_played);
  }
  /// (M - W - J*C) / M, counting every win as a single coin.
  double literal_mean_profit(int threshold) const noexcept;
};

struct TrajectoryPoint {
  std::uint64_t coup = 0;
  double cumulative_profit = 0.0;
  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct SimRun {
  Ledger ledger;
  std::vector<TrajectoryPoint> trajectory;
};

struct SimConfig {
  std::uint64_t coups = 100'000;          // M
  std::uint64_t replications = 10'000;
  std::uint64_t master_seed = 0;
  bool record_trajectory = false;         // kept for replication 0 only
  std::uint64_t trajectory_stride = 1000;
  unsigned threads = 1;                   // 0 = hardware concurrency

  void validate() const;
};

struct SimResult {
  std::vector<double> replication_means;          // casino profit per coup, per replication
  std::vector<double> replication_literal_means;  // (M - W - J*C) / M, per replication
  double grand_mean = 0.0;
  double sd = 0.0;  // sample standard deviation of replication_means
  double se = 0.0;  // sd / sqrt(replications)
  double literal_grand_mean = 0.0;
  std::vector<TrajectoryPoint> trajectory;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Plays `coups` coups cycling the strategy from position 0 with streak 0.
/// Each coup collects the stake, draws the arm's reward, and pays J coins
/// on the J-th consecutive loss. With stride > 0 the cumulative casino
/// profit is recorded after every stride-th coup. Deterministic in
/// (spec, coups, seed, stride).
SimRun simulate_once(const ChainSpec& spec, std::uint64_t coups, std::uint64_t seed, std::uint64_t stride = 0);

/// Cumulative casino profit after coups stride, 2*stride, ...
std::vector<TrajectoryPoint> cumulative_trajectory(const ChainSpec& spec, std::uint64_t coups, std::uint64_t seed,
                                                   std::uint64_t stride);

/// Independent replications; replication k is seeded with
/// split_seed(master_seed, k). Output does not depend on config.threads.
SimResult replicate(const ChainSpec& spec, const SimConfig& config);

}  // namespace futurity
