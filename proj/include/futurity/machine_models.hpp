#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "futurity/chain_oracle.hpp"

namespace futurity {

struct RewardEntry {
  double reward = 0.0;
  double probability = 0.0;

  friend bool operator==(const RewardEntry&, const RewardEntry&) = default;
};

/// Reward table of one mode cam. Zero-probability rows are kept so that
/// published tables round-trip unchanged.
class MultipointDistribution {
 public:
  /// Validates: probabilities in [0, 1] summing to 1 within 1e-12, rewards
  /// finite, nonnegative and distinct.
  explicit MultipointDistribution(std::vector<RewardEntry> entries);

  const std::vector<RewardEntry>& entries() const noexcept { return entries_; }

  ArmModel to_arm_model() const;

  friend bool operator==(const MultipointDistribution&, const MultipointDistribution&) = default;

 private:
  std::vector<RewardEntry> entries_;
};

struct TwoPointArm {
  double p = 0.0;  // win probability
  double u = 0.0;  // payout per win

  ArmModel to_arm_model() const { return ArmModel::two_point(p, u); }
};

struct NamedMode {
  std::string name;
  MultipointDistribution distribution;

  friend bool operator==(const NamedMode&, const NamedMode&) = default;
};

/// Two-armed machine: the first mode drives arm A, the second arm B.
struct Machine {
  NamedMode arm_a;
  NamedMode arm_b;

  friend bool operator==(const Machine&, const Machine&) = default;
};

/// Mode E and Mode O of the 1936 Mills Futurity machine.
std::pair<MultipointDistribution, MultipointDistribution> mills_modes();
Machine mills_machine();

/// 1 - P(reward == 0).
double win_probability(const MultipointDistribution& dist);

/// Keeps the win probability and sets the payout that makes the arm fair
/// when played alone. Throws DegenerateMode when p is 0 or 1.
TwoPointArm fair_two_point(const MultipointDistribution& dist);

/// Keeps the win probability and pays E[reward | reward > 0]. Not fair in general.
TwoPointArm empirical_two_point(const MultipointDistribution& dist);

enum class Reduction { kFair, kEmpirical, kRaw };

Reduction parse_reduction(std::string_view name);
std::string_view reduction_name(Reduction reduction);

ArmModel reduce(const MultipointDistribution& dist, Reduction reduction);

/// Spec that plays `labels` (over A/B) on the machine's two modes.
ChainSpec machine_spec(const Machine& machine, std::string_view labels, Reduction reduction, int threshold = 2);

/// Machine description text:
///
///   # comment
///   mode E
///   0 0.968
///   3 0.003
///   mode O
///   ...
///
/// Exactly two `mode <name>` sections, each a list of `reward probability`
/// lines. '#' starts a comment anywhere on a line.
Machine parse_machine(std::string_view text);
Machine load_machine(const std::string& path);

/// Writes a description that parse_machine reads back bit-exactly.
std::string format_machine(const Machine& machine);

}  // namespace futurity
