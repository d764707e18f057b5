#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace futurity {

struct Outcome {
  double reward = 0.0;  // coins paid to the player
  double probability = 0.0;
};

/// Per-coup payoff law of one arm. A coup counts as a loss iff its reward is
/// exactly zero; any positive reward resets the loss streak.
class ArmModel {
 public:
  /// Wins with probability p and pays `payout`; p may be 0 or 1.
  static ArmModel two_point(double p, double payout);

  /// Arbitrary reward distribution. Probabilities must sum to 1 within 1e-12.
  static ArmModel multipoint(std::vector<Outcome> outcomes);

  /// Arm that is A with probability gamma and B otherwise, drawn afresh every coup.
  static ArmModel mixture(double gamma, const ArmModel& a, const ArmModel& b);

  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  double loss_probability() const noexcept { return loss_probability_; }
  double win_probability() const noexcept { return 1.0 - loss_probability_; }
  double expected_payout() const noexcept { return expected_payout_; }
  double max_reward() const noexcept { return max_reward_; }

 private:
  explicit ArmModel(std::vector<Outcome> outcomes);

  std::vector<Outcome> outcomes_;
  double loss_probability_ = 0.0;
  double expected_payout_ = 0.0;
  double max_reward_ = 0.0;
};

/// Periodic play of labelled arms with a futurity award of `threshold` coins
/// on every `threshold`-th consecutive loss. Single-arm sequences are allowed.
struct ChainSpec {
  std::string labels;
  std::map<char, ArmModel> arms;
  int threshold = 2;  // J
  double stake = 1.0;

  /// Throws InvalidDistribution / ValidationError on malformed specs.
  void validate() const;

  /// Arm index per position, resolved against `arms`.
  std::vector<const ArmModel*> positions() const;
};

/// Fair two-armed spec: arms A and B with payouts (3 - 2p) / (2 - p).
ChainSpec fair_two_armed_spec(std::string_view labels, double p_a, double p_b, int threshold = 2);

/// Sparse view of the (position, streak) chain. State index = position * J + streak.
class Chain {
 public:
  explicit Chain(const ChainSpec& spec);

  std::size_t positions() const noexcept { return win_.size(); }
  int threshold() const noexcept { return threshold_; }
  std::size_t states() const noexcept { return win_.size() * static_cast<std::size_t>(threshold_); }

  double win_probability(std::size_t position) const { return win_[position]; }

  /// Successor states of `state` with their probabilities (at most two).
  struct Edge {
    std::size_t to;
    double probability;
  };
  std::vector<Edge> successors(std::size_t state) const;

  /// Dense row-stochastic matrix, size states() x states().
  Eigen::MatrixXd transition_matrix() const;

  /// Streak-only transition at one position, size J x J.
  Eigen::MatrixXd streak_transition(std::size_t position) const;

  /// max_j |(pi P)_j - pi_j|
  double residual(const std::vector<double>& pi) const;

 private:
  std::vector<double> win_;
  int threshold_;
};

enum class StationaryMethod { kAuto, kDense, kCycleTransfer };

/// States above this count switch from a dense solve to the cycle transfer solve.
inline constexpr std::size_t kDenseStateLimit = 2000;

/// Stationary distribution on the class reachable from (position 0, streak 0).
/// Unreachable states get mass zero. Throws SolverFailure when the residual
/// exceeds 1e-12.
std::vector<double> stationary(const Chain& chain, StationaryMethod method = StationaryMethod::kAuto);

struct ChainSolution {
  std::vector<double> stationary;  // index position * J + streak
  double futurity_rate = 0.0;      // award events per coup
  double casino_profit = 0.0;      // coins per coup
  double player_return = 0.0;      // coins per coup
  double residual = 0.0;
};

ChainSolution oracle_profit(const ChainSpec& spec, StationaryMethod method = StationaryMethod::kAuto);

/// Profit of a fair two-armed machine, each coup choosing arm A with probability gamma.
ChainSolution random_mix_oracle(double gamma, double p_a, double p_b, int threshold = 2);

}  // namespace futurity
