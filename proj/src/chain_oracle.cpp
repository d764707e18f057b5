#include "futurity/chain_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "futurity/errors.hpp"

namespace futurity {

namespace {

constexpr double kProbabilitySumTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-12;

std::vector<bool> reachable_from(std::size_t start, std::size_t count,
                                 const auto& neighbours /* (state, push) */) {
  std::vector<bool> seen(count, false);
  std::deque<std::size_t> frontier{start};
  seen[start] = true;
  while (!frontier.empty()) {
    const std::size_t state = frontier.front();
    frontier.pop_front();
    neighbours(state, [&](std::size_t next) {
      if (!seen[next]) {
        seen[next] = true;
        frontier.push_back(next);
      }
    });
  }
  return seen;
}

// Solves x M = x, sum(x) = 1 on the states flagged in `keep`.
std::vector<double> solve_fixed_point(const Eigen::MatrixXd& m, const std::vector<bool>& keep) {
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) index.push_back(i);
  const auto k = static_cast<Eigen::Index>(index.size());

  Eigen::MatrixXd system(k, k);
  for (Eigen::Index row = 0; row < k; ++row)
    for (Eigen::Index col = 0; col < k; ++col)
      system(row, col) = m(static_cast<Eigen::Index>(index[static_cast<std::size_t>(col)]),
                           static_cast<Eigen::Index>(index[static_cast<std::size_t>(row)]));
  system -= Eigen::MatrixXd::Identity(k, k);
  system.row(k - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  rhs(k - 1) = 1.0;

  const Eigen::VectorXd x = system.partialPivLu().solve(rhs);
  std::vector<double> out(keep.size(), 0.0);
  for (Eigen::Index i = 0; i < k; ++i) out[index[static_cast<std::size_t>(i)]] = std::max(0.0, x(i));
  return out;
}

std::vector<double> solve_dense(const Chain& chain) {
  const std::vector<bool> keep = reachable_from(0, chain.states(), [&](std::size_t s, auto&& push) {
    for (const auto& edge : chain.successors(s)) push(edge.to);
  });
  return solve_fixed_point(chain.transition_matrix(), keep);
}

// Composes the J x J streak transitions around one period, solves the
// streak distribution at position 0, then propagates it along the cycle.
std::vector<double> solve_cycle_transfer(const Chain& chain) {
  const std::size_t n = chain.positions();
  const auto j = static_cast<std::size_t>(chain.threshold());

  Eigen::MatrixXd cycle = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
  for (std::size_t i = 0; i < n; ++i) cycle = cycle * chain.streak_transition(i);

  const std::vector<bool> keep = reachable_from(0, j, [&](std::size_t s, auto&& push) {
    for (std::size_t t = 0; t < j; ++t)
      if (cycle(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) > 0.0) push(t);
  });
  const std::vector<double> start = solve_fixed_point(cycle, keep);

  std::vector<double> pi(chain.states(), 0.0);
  Eigen::RowVectorXd mu(static_cast<Eigen::Index>(j));
  for (std::size_t c = 0; c < j; ++c) mu(static_cast<Eigen::Index>(c)) = start[c];
  const double weight = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < j; ++c) pi[i * j + c] = weight * mu(static_cast<Eigen::Index>(c));
    mu = mu * chain.streak_transition(i);
  }
  return pi;
}

}  // namespace

ArmModel::ArmModel(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvalidDistribution("arm model has no outcomes");
  double total = 0.0;
  for (const Outcome& o : outcomes_) {
    if (!(o.probability >= 0.0 && o.probability <= 1.0))
      throw InvalidDistribution("outcome probability outside [0, 1]: " + std::to_string(o.probability));
    if (!(o.reward >= 0.0) || !std::isfinite(o.reward))
      throw InvalidDistribution("reward must be finite and nonnegative: " + std::to_string(o.reward));
    total += o.probability;
    if (o.reward == 0.0) loss_probability_ += o.probability;
    expected_payout_ += o.reward * o.probability;
    if (o.probability > 0.0) max_reward_ = std::max(max_reward_, o.reward);
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance)
    throw InvalidDistribution("outcome probabilities sum to " + std::to_string(total) + ", not 1");
}

ArmModel ArmModel::two_point(double p, double payout) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidDistribution("win probability outside [0, 1]");
  if (!(payout > 0.0)) throw InvalidDistribution("win payout must be positive");
  return ArmModel({{0.0, 1.0 - p}, {payout, p}});
}

ArmModel ArmModel::multipoint(std::vector<Outcome> outcomes) { return ArmModel(std::move(outcomes)); }

ArmModel ArmModel::mixture(double gamma, const ArmModel& a, const ArmModel& b) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidDistribution("mixture weight outside [0, 1]");
  std::vector<Outcome> merged;
  auto add = [&merged](double reward, double probability) {
    for (Outcome& o : merged)
      if (o.reward == reward) {
        o.probability += probability;
        return;
      }
    merged.push_back({reward, probability});
  };
  for (const Outcome& o : a.outcomes()) add(o.reward, gamma * o.probability);
  for (const Outcome& o : b.outcomes()) add(o.reward, (1.0 - gamma) * o.probability);
  return ArmModel(std::move(merged));
}

void ChainSpec::validate() const {
  if (labels.empty()) throw ValidationError("chain spec has an empty arm sequence");
  if (threshold < 2) throw ValidationError("futurity threshold J must be >= 2");
  for (char label : labels)
    if (arms.find(label) == arms.end())
      throw ValidationError(std::string("no arm model for label '") + label + "'");
}

std::vector<const ArmModel*> ChainSpec::positions() const {
  validate();
  std::vector<const ArmModel*> out;
  out.reserve(labels.size());
  for (char label : labels) out.push_back(&arms.at(label));
  return out;
}

ChainSpec fair_two_armed_spec(std::string_view labels, double p_a, double p_b, int threshold) {
  auto fair_arm = [](double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("win probability outside [0, 1]");
    return ArmModel::two_point(p, (3.0 - 2.0 * p) / (2.0 - p));
  };
  ChainSpec spec;
  spec.labels = std::string(labels);
  spec.arms.emplace('A', fair_arm(p_a));
  spec.arms.emplace('B', fair_arm(p_b));
  spec.threshold = threshold;
  return spec;
}

Chain::Chain(const ChainSpec& spec) : threshold_(spec.threshold) {
  for (const ArmModel* arm : spec.positions()) win_.push_back(arm->win_probability());
}

std::vector<Chain::Edge> Chain::successors(std::size_t state) const {
  const auto j = static_cast<std::size_t>(threshold_);
  const std::size_t position = state / j;
  const std::size_t streak = state % j;
  const std::size_t next = ((position + 1) % win_.size()) * j;
  const double p = win_[position];

  std::vector<Edge> edges;
  // J-th consecutive loss pays the award and resets, like a win.
  const double reset = streak + 1 == j ? 1.0 : p;
  if (reset > 0.0) edges.push_back({next, reset});
  if (streak + 1 < j && p < 1.0) edges.push_back({next + streak + 1, 1.0 - p});
  return edges;
}

Eigen::MatrixXd Chain::transition_matrix() const {
  const auto n = static_cast<Eigen::Index>(states());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t s = 0; s < states(); ++s)
    for (const Edge& e : successors(s))
      m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(e.to)) += e.probability;
  return m;
}

Eigen::MatrixXd Chain::streak_transition(std::size_t position) const {
  const auto j = static_cast<Eigen::Index>(threshold_);
  const double p = win_[position];
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(j, j);
  for (Eigen::Index c = 0; c + 1 < j; ++c) {
    m(c, 0) += p;
    m(c, c + 1) += 1.0 - p;
  }
  m(j - 1, 0) = 1.0;
  return m;
}

double Chain::residual(const std::vector<double>& pi) const {
  std::vector<double> next(states(), 0.0);
  for (std::size_t s = 0; s < states(); ++s)
    for (const Edge& e : successors(s)) next[e.to] += pi[s] * e.probability;
  double worst = 0.0;
  for (std::size_t s = 0; s < states(); ++s) worst = std::max(worst, std::abs(next[s] - pi[s]));
  return worst;
}

std::vector<double> stationary(const Chain& chain, StationaryMethod method) {
  if (method == StationaryMethod::kAuto)
    method = chain.states() <= kDenseStateLimit ? StationaryMethod::kDense : StationaryMethod::kCycleTransfer;
  std::vector<double> pi = method == StationaryMethod::kDense ? solve_dense(chain) : solve_cycle_transfer(chain);

  double total = 0.0;
  for (double x : pi) total += x;
  const double res = chain.residual(pi);
  if (!(res <= kResidualTolerance) || !(std::abs(total - 1.0) <= 1e-10))
    throw SolverFailure("stationary distribution failed the residual check", res);
  return pi;
}

ChainSolution oracle_profit(const ChainSpec& spec, StationaryMethod method) {
  const std::vector<const ArmModel*> arms = spec.positions();
  const Chain chain(spec);

  ChainSolution sol;
  sol.stationary = stationary(chain, method);
  sol.residual = chain.residual(sol.stationary);

  const auto j = static_cast<std::size_t>(spec.threshold);
  double payouts = 0.0;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    double weight = 0.0;
    for (std::size_t c = 0; c < j; ++c) weight += sol.stationary[i * j + c];
    payouts += weight * arms[i]->expected_payout();
    sol.futurity_rate += sol.stationary[i * j + j - 1] * arms[i]->loss_probability();
  }
  sol.player_return = payouts + static_cast<double>(spec.threshold) * sol.futurity_rate;
  sol.casino_profit = spec.stake - sol.player_return;
  return sol;
}

ChainSolution random_mix_oracle(double gamma, double p_a, double p_b, int threshold) {
  const ChainSpec pair = fair_two_armed_spec("AB", p_a, p_b, threshold);
  ChainSpec spec;
  spec.labels = "M";
  spec.arms.emplace('M', ArmModel::mixture(gamma, pair.arms.at('A'), pair.arms.at('B')));
  spec.threshold = threshold;
  return oracle_profit(spec);
}

}  // namespace futurity
