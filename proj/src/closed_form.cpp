#include "futurity/closed_form.hpp"

#include <cmath>
#include <string>

#include "futurity/errors.hpp"

namespace futurity {

namespace {

void require_open_unit(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError(std::string(name) + " must lie in the open interval (0, 1), got " + std::to_string(p));
}

// (-x)^k for nonnegative integer k.
double signed_power(double x, std::size_t k) {
  const double magnitude = std::pow(x, static_cast<double>(k));
  return k % 2 == 0 ? magnitude : -magnitude;
}

}  // namespace

ArmProbabilities::ArmProbabilities(double p_a, double p_b) : p_a_(p_a), p_b_(p_b) {
  require_open_unit(p_a, "p_A");
  require_open_unit(p_b, "p_B");
}

std::vector<double> b_sequence(const BlockVector& blocks, const ArmProbabilities& probs) {
  const std::size_t period = 2 * blocks.h;
  std::vector<double> b(2 * period);
  for (std::size_t i = 0; i < period; ++i) {
    const double q = i % 2 == 0 ? probs.q_a() : probs.q_b();
    b[i] = signed_power(q, blocks.a[i]);
    b[i + period] = b[i];
  }
  return b;
}

double q_factor(const BlockVector& blocks, const ArmProbabilities& probs) {
  const std::vector<double> b = b_sequence(blocks, probs);
  const std::size_t period = 2 * blocks.h;
  const double h = static_cast<double>(blocks.h);

  double total = h;
  for (std::size_t m = 0; m < period; ++m) {
    double window = 1.0;
    for (std::size_t j = 1; j < period; ++j) {
      window *= b[m + j - 1];
      if (window == 0.0) break;  // underflowed; every longer window is zero too
      total += j % 2 == 0 ? window : -window;
    }
  }

  double full = 1.0;
  for (std::size_t i = 0; i < period; ++i) full *= b[i];
  return total + h * full;
}

double s_factor(std::size_t r, std::size_t s, const ArmProbabilities& probs) {
  if (r == 0 || s == 0) throw DomainError("s_factor needs r >= 1 and s >= 1");
  const double qa_r = std::pow(probs.q_a(), static_cast<double>(r));
  const double qb_s = std::pow(probs.q_b(), static_cast<double>(s));
  const double diff = probs.p_a() - probs.p_b();
  const double sign = (r + s) % 2 == 0 ? 1.0 : -1.0;
  const double two_a = 2.0 - probs.p_a();
  const double two_b = 2.0 - probs.p_b();
  const double cycle = qa_r * qb_s;

  const double numerator = diff * diff * (1.0 + sign * cycle);
  const double denominator =
      static_cast<double>(r + s) * two_a * two_a * two_b * two_b * (1.0 - cycle * cycle);
  return numerator / denominator;
}

ProfitReport exact_profit(const Strategy& strategy, const ArmProbabilities& probs) {
  const BlockVector blocks = block_vector(canonical_rotation(strategy));
  ProfitReport report;
  report.q = q_factor(blocks, probs);
  report.s = s_factor(blocks.r, blocks.s, probs);
  report.profit = 2.0 * report.q * report.s;
  report.h = blocks.h;
  report.r = blocks.r;
  report.s_count = blocks.s;
  return report;
}

double ars_profit(std::size_t r, std::size_t s, const ArmProbabilities& probs) {
  const double x = probs.q_a();
  const double y = probs.q_b();
  return 2.0 * s_factor(r, s, probs) * (1.0 - signed_power(x, r)) * (1.0 - signed_power(y, s));
}

double single_arm_futurity_rate(double p) {
  require_open_unit(p, "p");
  const double q = 1.0 - p;
  return p * q * q / (1.0 - q * q);
}

double fair_payout(double p) {
  require_open_unit(p, "p");
  return (3.0 - 2.0 * p) / (2.0 - p);
}

double futurity_rate_strategy(const Strategy& strategy, const ArmProbabilities& probs) {
  const std::size_t n = strategy.size();
  std::vector<double> p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = probs.p(strategy[i]);
    q[i] = 1.0 - p[i];
  }

  // A futurity award lands on every second loss of a loss run that follows a
  // win. Summing the first n even run lengths and dividing by the geometric
  // factor of one full double period accounts for all longer runs.
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double run = p[j];
    for (std::size_t t = 1; t <= 2 * n; ++t) {
      run *= q[(j + t) % n];
      if (run == 0.0) break;
      if (t % 2 == 0) total += run;
    }
  }

  const double cycle = std::pow(probs.q_a(), static_cast<double>(strategy.r())) *
                       std::pow(probs.q_b(), static_cast<double>(strategy.s()));
  return total / static_cast<double>(n) / (1.0 - cycle * cycle);
}

double profit_via_rates(const Strategy& strategy, const ArmProbabilities& probs) {
  const double n = static_cast<double>(strategy.size());
  const double weighted = static_cast<double>(strategy.r()) / n * single_arm_futurity_rate(probs.p_a()) +
                          static_cast<double>(strategy.s()) / n * single_arm_futurity_rate(probs.p_b());
  return 2.0 * (weighted - futurity_rate_strategy(strategy, probs));
}

double profit_via_rates_printed_sign(const Strategy& strategy, const ArmProbabilities& probs) {
  return -profit_via_rates(strategy, probs);
}

double block_swap_delta(const BlockVector& blocks, const ArmProbabilities& probs) {
  if (blocks.h < 2) throw BlockCountTooSmall(blocks.h);
  const std::vector<double> b = b_sequence(blocks, probs);
  const std::size_t h = blocks.h;
  // 1-based access to match the run numbering.
  auto at = [&b](std::size_t i) { return b[i - 1]; };

  double forward = 0.0;
  double prod = 1.0;
  for (std::size_t j = 0; j <= 2 * h - 3; ++j) {
    if (j > 0) prod *= at(j);
    forward += j % 2 == 0 ? prod : -prod;
  }

  double backward = 0.0;
  prod = 1.0;
  for (std::size_t j = 1; j <= 2 * h - 2; ++j) {
    prod *= at(2 * h - 1 - j);
    backward += j % 2 == 0 ? prod : -prod;
  }

  return 2.0 * s_factor(blocks.r, blocks.s, probs) * (1.0 - at(2 * h - 1)) * (1.0 - at(2 * h)) *
         (forward + backward);
}

Strategy swap_last_blocks(const BlockVector& blocks) {
  if (blocks.h < 2) throw BlockCountTooSmall(blocks.h);
  std::vector<Arm> symbols;
  symbols.reserve(blocks.r + blocks.s);
  const std::size_t last_a = 2 * blocks.h - 2;
  for (std::size_t i = 0; i < last_a; ++i)
    symbols.insert(symbols.end(), blocks.a[i], i % 2 == 0 ? Arm::A : Arm::B);
  symbols.insert(symbols.end(), blocks.a[last_a + 1], Arm::B);
  symbols.insert(symbols.end(), blocks.a[last_a], Arm::A);
  return Strategy::from_symbols(std::move(symbols));
}

double mix_kernel(double z) { return 2.0 * z * z / (1.0 + z); }

double random_mix_profit(double gamma, const ArmProbabilities& probs) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw DomainError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  const double qa = probs.q_a();
  const double qb = probs.q_b();
  return gamma * mix_kernel(qa) + (1.0 - gamma) * mix_kernel(qb) - mix_kernel(gamma * qa + (1.0 - gamma) * qb);
}

double random_mix_profit_printed_sign(double gamma, const ArmProbabilities& probs) {
  return -random_mix_profit(gamma, probs);
}

}  // namespace futurity
