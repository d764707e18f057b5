// futurity: command-line front end for the two-armed Futurity slot machine analyses.
//
// Exit codes: 0 success, 2 validation error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "futurity/errors.hpp"
#include "futurity/experiments.hpp"

namespace fx = futurity::experiments;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw futurity::ValidationError("cannot write output file '" + path + "'");
  out << text;
  if (!out) throw futurity::ValidationError("failed writing output file '" + path + "'");
}

std::vector<futurity::Strategy> parse_strategies(const std::vector<std::string>& texts) {
  std::vector<futurity::Strategy> out;
  if (texts.empty())
    for (std::string_view s : fx::kReferenceStrategies) out.push_back(futurity::Strategy::parse(s));
  for (const std::string& t : texts) out.push_back(futurity::Strategy::parse(t));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and simulated casino profit of the two-armed Futurity slot machine"};
  app.require_subcommand(1);

  std::string strategy_text;
  std::vector<std::string> strategy_list;
  std::optional<double> pa, pb, fix_pa, fix_pb;
  double grid_step = 0.1;
  std::vector<double> gammas;
  std::uint64_t coups = 100'000, reps = 10'000, stride = 10'000;
  std::optional<std::uint64_t> seed;
  int threshold = 2;
  unsigned threads = 1;
  std::string machine_path, reduction = "fair", out_path, summary_path, format;
  bool printed_sign = false, dump = false;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "Output path (default: standard output)");
  };

  CLI::App* exact = app.add_subcommand("exact", "Closed-form profit with oracle cross-check");
  exact->add_option("--strategy", strategy_text, "Pattern over {A,B}, e.g. AABB")->required();
  exact->add_option("--pa", pa, "Win probability of arm A")->required();
  exact->add_option("--pb", pb, "Win probability of arm B")->required();
  exact->add_option("--format", format, "Output format: text|json")->check(CLI::IsMember({"text", "json"}));
  exact->add_option("--out", out_path, "Output path (default: standard output)");

  CLI::App* sweep = app.add_subcommand("sweep", "Profit surface over a (p_A, p_B) grid");
  sweep->add_option("--strategy", strategy_list, "Pattern(s); defaults to the four reference strategies");
  sweep->add_option("--grid-step", grid_step, "Grid spacing; 1/step must be an integer");
  sweep->add_option("--fix-pa", fix_pa, "Hold p_A fixed");
  sweep->add_option("--fix-pb", fix_pb, "Hold p_B fixed");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  add_format(sweep);

  CLI::App* random_sweep = app.add_subcommand("random-sweep", "Profit of i.i.d. random arm choice");
  random_sweep->add_option("--gamma", gammas, "Probability of choosing arm A (repeatable)");
  random_sweep->add_option("--grid-step", grid_step, "Grid spacing; 1/step must be an integer");
  random_sweep->add_option("--fix-pa", fix_pa, "Hold p_A fixed");
  random_sweep->add_option("--fix-pb", fix_pb, "Hold p_B fixed");
  random_sweep->add_flag("--printed-sign", printed_sign, "Also print the opposite-sign convention");
  random_sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  add_format(random_sweep);

  auto add_arm_source = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_text, "Arm sequence over {A,B}; single-arm allowed")->required();
    cmd->add_option("--pa", pa, "Win probability of arm A (fair payout)");
    cmd->add_option("--pb", pb, "Win probability of arm B (fair payout)");
    cmd->add_option("--machine", machine_path, "Machine description file (default: built-in Mills machine)");
    cmd->add_option("--reduction", reduction, "Machine arm reduction: fair|empirical|raw");
    cmd->add_option("--j", threshold, "Futurity threshold J")->check(CLI::Range(2, 1'000'000));
    cmd->add_option("--coups", coups, "Coups per replication (M)")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Master seed (drawn from entropy and reported when absent)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo replications against the oracle");
  add_arm_source(simulate);
  simulate->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");
  simulate->add_option("--out", out_path, "Per-replication CSV path (default: standard output)");
  simulate->add_option("--summary", summary_path, "Summary JSON path (default: standard error)");

  CLI::App* trajectory = app.add_subcommand("trajectory", "Cumulative casino profit of one long session");
  add_arm_source(trajectory);
  trajectory->add_option("--stride", stride, "Record every stride coups")->check(CLI::PositiveNumber);
  add_format(trajectory);

  CLI::App* machine_info = app.add_subcommand("machine-info", "Describe a two-mode machine and its reductions");
  machine_info->add_option("--machine", machine_path, "Machine description file (default: built-in Mills machine)");
  machine_info->add_option("--j", threshold, "Futurity threshold J")->check(CLI::Range(2, 1'000'000));
  machine_info->add_flag("--dump", dump, "Print the machine in file format and exit");
  machine_info->add_option("--format", format, "Output format: text|json")->check(CLI::IsMember({"text", "json"}));
  machine_info->add_option("--out", out_path, "Output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    auto fmt = [&] { return format == "json" ? fx::Format::kJson : fx::Format::kCsv; };
    auto arm_source = [&] {
      fx::ArmSource source;
      source.p_a = pa;
      source.p_b = pb;
      if (!machine_path.empty()) source.machine = futurity::load_machine(machine_path);
      source.reduction = futurity::parse_reduction(reduction);
      return source;
    };
    auto master_seed = [&] {
      if (seed) return *seed;
      std::random_device rd;
      const std::uint64_t drawn = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      std::cerr << "seed " << drawn << "\n";
      return drawn;
    };

    if (*exact) {
      const auto report = fx::run_exact(futurity::Strategy::parse(strategy_text), *pa, *pb);
      emit(fx::render_exact(report, fmt()), out_path);
    } else if (*sweep) {
      fx::SweepSpec spec;
      spec.strategies = parse_strategies(strategy_list);
      spec.grid_step = grid_step;
      spec.fix_pa = fix_pa;
      spec.fix_pb = fix_pb;
      spec.threads = threads;
      emit(fx::render_sweep(fx::run_sweep(spec), fmt()), out_path);
    } else if (*random_sweep) {
      fx::RandomSweepSpec spec;
      if (!gammas.empty()) spec.gammas = gammas;
      spec.grid_step = grid_step;
      spec.fix_pa = fix_pa;
      spec.fix_pb = fix_pb;
      spec.printed_sign = printed_sign;
      spec.threads = threads;
      emit(fx::render_random_sweep(fx::run_random_sweep(spec), spec, fmt()), out_path);
    } else if (*simulate) {
      const futurity::ChainSpec spec = fx::make_chain_spec(strategy_text, arm_source(), threshold);
      futurity::SimConfig config;
      config.coups = coups;
      config.replications = reps;
      config.master_seed = master_seed();
      config.threads = threads;
      const fx::SimulateOutput result = fx::run_simulate(spec, config);
      emit(fx::render_replications_csv(result.result), out_path);
      const std::string summary = fx::render_simulate_summary(result, spec, config);
      if (summary_path.empty())
        std::cerr << summary;
      else
        emit(summary, summary_path);
    } else if (*trajectory) {
      const futurity::ChainSpec spec = fx::make_chain_spec(strategy_text, arm_source(), threshold);
      const auto points = futurity::cumulative_trajectory(spec, coups, master_seed(), stride);
      emit(fx::render_trajectory(points, fmt()), out_path);
    } else if (*machine_info) {
      const futurity::Machine machine =
          machine_path.empty() ? futurity::mills_machine() : futurity::load_machine(machine_path);
      if (dump)
        emit(futurity::format_machine(machine), out_path);
      else
        emit(fx::render_machine_info(machine, threshold, fmt()), out_path);
    }
  } catch (const futurity::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const futurity::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
