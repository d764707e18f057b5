#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "futurity/chain_oracle.hpp"
#include "futurity/closed_form.hpp"
#include "futurity/errors.hpp"
#include "futurity/experiments.hpp"
#include "futurity/machine_models.hpp"
#include "futurity/simulator.hpp"
#include "futurity/strategy.hpp"

namespace py = pybind11;
namespace fx = futurity::experiments;
using namespace futurity;

namespace {

py::dict solution_dict(const ChainSolution& s) {
  py::dict d;
  d["casino_profit"] = s.casino_profit;
  d["futurity_rate"] = s.futurity_rate;
  d["player_return"] = s.player_return;
  d["stationary"] = s.stationary;
  d["residual"] = s.residual;
  return d;
}

std::vector<Strategy> parse_all(const std::vector<std::string>& texts) {
  std::vector<Strategy> out;
  if (texts.empty())
    for (std::string_view s : fx::kReferenceStrategies) out.push_back(Strategy::parse(s));
  for (const auto& t : texts) out.push_back(Strategy::parse(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-armed Futurity slot machine: closed forms, chain oracle and simulator";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);

  m.def("canonical_rotation", [](const std::string& s) { return canonical_rotation(Strategy::parse(s)).to_string(); },
        py::arg("strategy"));
  m.def(
      "block_vector",
      [](const std::string& s) {
        Strategy d = Strategy::parse(s);
        if (d.symbols().front() != Arm::A || d.symbols().back() != Arm::B) d = canonical_rotation(d);
        return block_vector(d).a;
      },
      py::arg("strategy"), "Run lengths; patterns not starting with A and ending with B are rotated first.");

  m.def(
      "exact_profit",
      [](const std::string& s, double pa, double pb) {
        const ProfitReport r = exact_profit(Strategy::parse(s), ArmProbabilities(pa, pb));
        py::dict d;
        d["profit"] = r.profit;
        d["q"] = r.q;
        d["s"] = r.s;
        d["h"] = r.h;
        d["r"] = r.r;
        d["s_count"] = r.s_count;
        return d;
      },
      py::arg("strategy"), py::arg("p_a"), py::arg("p_b"));
  m.def("ars_profit", [](std::size_t r, std::size_t s, double pa, double pb) {
    return ars_profit(r, s, ArmProbabilities(pa, pb));
  }, py::arg("r"), py::arg("s"), py::arg("p_a"), py::arg("p_b"));
  m.def("profit_via_rates", [](const std::string& s, double pa, double pb) {
    return profit_via_rates(Strategy::parse(s), ArmProbabilities(pa, pb));
  }, py::arg("strategy"), py::arg("p_a"), py::arg("p_b"));
  m.def("futurity_rate", [](const std::string& s, double pa, double pb) {
    return futurity_rate_strategy(Strategy::parse(s), ArmProbabilities(pa, pb));
  }, py::arg("strategy"), py::arg("p_a"), py::arg("p_b"));
  m.def("block_swap_delta", [](const std::vector<std::size_t>& runs, double pa, double pb) {
    return block_swap_delta(make_blocks(runs), ArmProbabilities(pa, pb));
  }, py::arg("runs"), py::arg("p_a"), py::arg("p_b"));
  m.def("random_mix_profit", [](double gamma, double pa, double pb) {
    return random_mix_profit(gamma, ArmProbabilities(pa, pb));
  }, py::arg("gamma"), py::arg("p_a"), py::arg("p_b"));
  m.def("fair_payout", &fair_payout, py::arg("p"));
  m.def("single_arm_futurity_rate", &single_arm_futurity_rate, py::arg("p"));

  m.def("oracle_profit", [](const std::string& labels, double pa, double pb, int j) {
    return solution_dict(oracle_profit(fair_two_armed_spec(fx::parse_labels(labels), pa, pb, j)));
  }, py::arg("strategy"), py::arg("p_a"), py::arg("p_b"), py::arg("threshold") = 2);
  m.def("random_mix_oracle", [](double gamma, double pa, double pb, int j) {
    return solution_dict(random_mix_oracle(gamma, pa, pb, j));
  }, py::arg("gamma"), py::arg("p_a"), py::arg("p_b"), py::arg("threshold") = 2);
  m.def("mills_oracle_profit", [](const std::string& labels, const std::string& reduction, int j) {
    return solution_dict(oracle_profit(machine_spec(mills_machine(), fx::parse_labels(labels), parse_reduction(reduction), j)));
  }, py::arg("strategy"), py::arg("reduction") = "fair", py::arg("threshold") = 2);

  m.def(
      "simulate",
      [](const std::string& labels, double pa, double pb, std::uint64_t coups, std::uint64_t reps,
         std::uint64_t seed, int j, unsigned threads) {
        SimConfig config;
        config.coups = coups;
        config.replications = reps;
        config.master_seed = seed;
        config.threads = threads;
        const ChainSpec spec = fair_two_armed_spec(fx::parse_labels(labels), pa, pb, j);
        fx::SimulateOutput out;
        {
          py::gil_scoped_release release;
          out = fx::run_simulate(spec, config);
        }
        py::dict d;
        d["replication_means"] = out.result.replication_means;
        d["grand_mean"] = out.result.grand_mean;
        d["sd"] = out.result.sd;
        d["se"] = out.result.se;
        d["oracle_value"] = out.oracle_value;
        d["z_score"] = out.z_score;
        return d;
      },
      py::arg("strategy"), py::arg("p_a"), py::arg("p_b"), py::arg("coups") = 100'000, py::arg("replications") = 100,
      py::arg("seed") = 0, py::arg("threshold") = 2, py::arg("threads") = 1);

  m.def(
      "trajectory",
      [](const std::string& labels, std::uint64_t coups, std::uint64_t seed, std::uint64_t stride,
         const std::string& reduction) {
        const ChainSpec spec = machine_spec(mills_machine(), fx::parse_labels(labels), parse_reduction(reduction), 2);
        std::vector<std::pair<std::uint64_t, double>> out;
        for (const auto& p : cumulative_trajectory(spec, coups, seed, stride)) out.emplace_back(p.coup, p.cumulative_profit);
        return out;
      },
      py::arg("strategy"), py::arg("coups") = 1'000'000, py::arg("seed") = 1936, py::arg("stride") = 10'000,
      py::arg("reduction") = "fair", "Cumulative casino profit on the Mills machine.");

  m.def("mills_modes", [] {
    const auto [e, o] = mills_modes();
    auto rows = [](const MultipointDistribution& d) {
      std::vector<std::pair<double, double>> out;
      for (const auto& r : d.entries()) out.emplace_back(r.reward, r.probability);
      return out;
    };
    py::dict d;
    d["E"] = rows(e);
    d["O"] = rows(o);
    return d;
  });

  m.def(
      "sweep_csv",
      [](const std::vector<std::string>& strategies, double step, unsigned threads) {
        fx::SweepSpec spec;
        spec.strategies = parse_all(strategies);
        spec.grid_step = step;
        spec.threads = threads;
        return fx::render_sweep(fx::run_sweep(spec), fx::Format::kCsv);
      },
      py::arg("strategies") = std::vector<std::string>{}, py::arg("grid_step") = 0.1, py::arg("threads") = 1);
}
