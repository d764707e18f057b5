#pragma once

#include <cstddef>
#include <vector>

#include "futurity/strategy.hpp"

namespace futurity {

/// Win probabilities of the two arms, both strictly inside (0, 1).
class ArmProbabilities {
 public:
  ArmProbabilities(double p_a, double p_b);

  double p_a() const noexcept { return p_a_; }
  double p_b() const noexcept { return p_b_; }
  double q_a() const noexcept { return 1.0 - p_a_; }
  double q_b() const noexcept { return 1.0 - p_b_; }
  double p(Arm arm) const noexcept { return arm == Arm::A ? p_a_ : p_b_; }

 private:
  double p_a_;
  double p_b_;
};

/// Long-run casino profit per coup under a periodic strategy with J = 2,
/// R = 2 * q * s, together with its constituents.
struct ProfitReport {
  double profit = 0.0;  // R, coins per coup
  double q = 0.0;       // structural factor, depends on the block layout
  double s = 0.0;       // parametric factor, depends on r, s and the arm probabilities
  std::size_t h = 0;
  std::size_t r = 0;
  std::size_t s_count = 0;
};

/// Signed block weights b_1..b_{4h}: (-q_A)^{r_j} on A-runs, (-q_B)^{s_j} on
/// B-runs, then the first 2h entries repeated once.
std::vector<double> b_sequence(const BlockVector& blocks, const ArmProbabilities& probs);

/// Structural factor, evaluated as the literal double sum over cyclic
/// windows of the b sequence (O(h^2)).
double q_factor(const BlockVector& blocks, const ArmProbabilities& probs);

/// Parametric factor. Zero iff p_A == p_B.
double s_factor(std::size_t r, std::size_t s, const ArmProbabilities& probs);

/// Long-run casino profit of `strategy`. Any rotation is accepted; the
/// strategy is canonicalized before decomposition.
ProfitReport exact_profit(const Strategy& strategy, const ArmProbabilities& probs);

/// Profit of the single-block strategy A^r B^s.
double ars_profit(std::size_t r, std::size_t s, const ArmProbabilities& probs);

/// Per-coup futurity rate when a single arm is played alone: p q^2 / (1 - q^2).
double single_arm_futurity_rate(double p);

/// Payout per winning coup that makes a single arm fair: (3 - 2p) / (2 - p).
double fair_payout(double p);

/// Per-coup futurity rate under `strategy`, via the periodic double sum
/// over win positions and even-length loss runs.
double futurity_rate_strategy(const Strategy& strategy, const ArmProbabilities& probs);

/// Casino profit through futurity rates:
/// 2 * ((r/n) rate_A + (s/n) rate_B - rate_D).
double profit_via_rates(const Strategy& strategy, const ArmProbabilities& probs);

/// The same difference with the opposite sign, as it is sometimes printed
/// (rate_D minus the weighted single-arm rates). Negative whenever p_A != p_B.
double profit_via_rates_printed_sign(const Strategy& strategy, const ArmProbabilities& probs);

/// Profit difference R(D) - R(D') where D' swaps the last A-run with the last
/// B-run. Requires h >= 2.
double block_swap_delta(const BlockVector& blocks, const ArmProbabilities& probs);

/// Swaps the trailing A-run and B-run of a block vector, returning the
/// resulting (non-canonical) strategy D'.
Strategy swap_last_blocks(const BlockVector& blocks);

/// 2 z^2 / (1 + z): twice the single-arm futurity rate as a function of the loss probability.
double mix_kernel(double z);

/// Casino profit when every coup independently picks arm A with probability
/// `gamma`: gamma f(q_A) + (1-gamma) f(q_B) - f(gamma q_A + (1-gamma) q_B).
double random_mix_profit(double gamma, const ArmProbabilities& probs);

/// f(mean) - mean(f): the opposite-sign convention, never positive.
double random_mix_profit_printed_sign(double gamma, const ArmProbabilities& probs);

}  // namespace futurity
