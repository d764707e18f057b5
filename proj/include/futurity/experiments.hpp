#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "futurity/chain_oracle.hpp"
#include "futurity/closed_form.hpp"
#include "futurity/machine_models.hpp"
#include "futurity/simulator.hpp"
#include "futurity/strategy.hpp"

namespace futurity::experiments {

/// The four strategies used as defaults by sweeps and reports.
inline constexpr std::array<std::string_view, 4> kReferenceStrategies = {"AB", "AABB", "AAABB",
                                                                     "AAAABBBBAAAAAABBB"};

/// Largest |closed form - oracle| tolerated before reporting a numeric failure.
inline constexpr double kOracleTolerance = 1e-9;

/// Fixed 9-significant-digit rendering used by every CSV; never prints "-0".
std::string format_number(double x);

/// Interior grid points k/K, k = 1..K-1, where K = 1/step must be an integer >= 3.
std::vector<double> probability_grid(double step);

/// Arm-label sequence for the simulator: A/B letters, whitespace dropped,
/// case-insensitive, single-arm sequences allowed.
std::string parse_labels(std::string_view text);

enum class Format { kCsv, kJson };
Format parse_format(std::string_view name);

// ---- exact -----------------------------------------------------------------

struct ExactReport {
  std::string strategy;   // as given
  std::string canonical;  // canonical rotation
  ProfitReport profit;
  double oracle_profit = 0.0;
  double oracle_diff = 0.0;
  double rates_route = 0.0;        // profit through futurity rates
  double rates_printed_sign = 0.0;  // same difference, opposite sign
  double futurity_rate = 0.0;
};

/// Closed form with an oracle cross-check. Throws
/// NumericFailure when the two disagree beyond kOracleTolerance.
ExactReport run_exact(const Strategy& strategy, double p_a, double p_b);
std::string render_exact(const ExactReport& report, Format format);

// ---- sweep -----------------------------------------------------------------

struct SweepSpec {
  std::vector<Strategy> strategies;
  double grid_step = 0.1;
  std::optional<double> fix_pa;
  std::optional<double> fix_pb;
  unsigned threads = 1;
};

struct SweepRow {
  std::string strategy;
  double p_a = 0.0;
  double p_b = 0.0;
  double r_exact = 0.0;
  double q = 0.0;
  double s = 0.0;
  double oracle_diff = 0.0;
};

/// Rows ordered by strategy (as listed), then p_a, then p_b ascending.
/// Every cell is checked against the oracle; divergence throws NumericFailure.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::string render_sweep(const std::vector<SweepRow>& rows, Format format);

// ---- random-sweep ----------------------------------------------------------

struct RandomSweepSpec {
  std::vector<double> gammas = {0.1, 0.3, 0.5, 0.7, 0.9};
  double grid_step = 0.1;
  std::optional<double> fix_pa;
  std::optional<double> fix_pb;
  bool printed_sign = false;  // adds the opposite-sign column
  unsigned threads = 1;
};

struct RandomSweepRow {
  double gamma = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  double r_c = 0.0;
};

std::vector<RandomSweepRow> run_random_sweep(const RandomSweepSpec& spec);
std::string render_random_sweep(const std::vector<RandomSweepRow>& rows, const RandomSweepSpec& spec, Format format);

// ---- simulate / trajectory -------------------------------------------------

/// Arm source for simulations: fair two-point arms from probabilities, or a machine file.
struct ArmSource {
  std::optional<double> p_a;
  std::optional<double> p_b;
  std::optional<Machine> machine;
  Reduction reduction = Reduction::kFair;
};

/// Falls back to the built-in Mills machine when neither probabilities nor a machine are set.
ChainSpec make_chain_spec(std::string_view labels, const ArmSource& source, int threshold);

struct SimulateOutput {
  SimResult result;
  double oracle_value = 0.0;
  double z_score = 0.0;
  std::uint64_t seed = 0;
};

SimulateOutput run_simulate(const ChainSpec& spec, const SimConfig& config);

/// `replication,mean_profit,literal_mean_profit`
std::string render_replications_csv(const SimResult& result);
/// {schema_version, grand_mean, sd, se, oracle_value, z_score, ...}
std::string render_simulate_summary(const SimulateOutput& out, const ChainSpec& spec, const SimConfig& config);

/// `coup,cumulative_profit`
std::string render_trajectory(const std::vector<TrajectoryPoint>& points, Format format);

// ---- machine-info ----------------------------------------------------------

std::string render_machine_info(const Machine& machine, int threshold, Format format);

}  // namespace futurity::experiments
