#include "futurity/experiments.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "futurity/errors.hpp"
#include "futurity/parallel.hpp"

namespace futurity::experiments {

using Json = nlohmann::ordered_json;

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void require_open_unit(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1)");
}

std::vector<double> axis(std::optional<double> fixed, const std::vector<double>& grid, const char* name) {
  if (!fixed) return grid;
  require_open_unit(*fixed, name);
  return {*fixed};
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::vector<double> probability_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) throw ValidationError("grid step must lie in (0, 1)");
  const double inverse = 1.0 / step;
  const double k = std::round(inverse);
  if (std::abs(inverse - k) > 1e-9 * k) throw ValidationError("grid step must divide 1 evenly");
  if (k < 3) throw ValidationError("grid step must leave at least two interior points");
  std::vector<double> grid;
  const auto count = static_cast<int>(k);
  for (int i = 1; i < count; ++i) grid.push_back(static_cast<double>(i) / k);
  return grid;
}

std::string parse_labels(std::string_view text) {
  std::string labels;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper != 'A' && upper != 'B') throw IllegalCharacter(pos, c);
    labels.push_back(upper);
  }
  if (labels.empty()) throw EmptyPattern();
  if (labels.size() > kMaxStrategyLength) throw PatternTooLong(labels.size());
  return labels;
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw ValidationError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

// ---- exact -----------------------------------------------------------------

ExactReport run_exact(const Strategy& strategy, double p_a, double p_b) {
  const ArmProbabilities probs(p_a, p_b);
  ExactReport report;
  report.strategy = strategy.to_string();
  report.canonical = canonical_rotation(strategy).to_string();
  report.profit = exact_profit(strategy, probs);
  report.rates_route = profit_via_rates(strategy, probs);
  report.rates_printed_sign = profit_via_rates_printed_sign(strategy, probs);
  report.futurity_rate = futurity_rate_strategy(strategy, probs);

  const ChainSolution oracle = oracle_profit(fair_two_armed_spec(report.strategy, p_a, p_b));
  report.oracle_profit = oracle.casino_profit;
  report.oracle_diff = std::abs(report.profit.profit - oracle.casino_profit);
  if (!(report.oracle_diff <= kOracleTolerance))
    throw NumericFailure("closed form and chain oracle disagree by " + format_number(report.oracle_diff));
  return report;
}

std::string render_exact(const ExactReport& r, Format format) {
  if (format == Format::kJson) {
    Json j;
    j["schema_version"] = 1;
    j["strategy"] = r.strategy;
    j["canonical"] = r.canonical;
    j["h"] = r.profit.h;
    j["r"] = r.profit.r;
    j["s"] = r.profit.s_count;
    j["R"] = r.profit.profit;
    j["Q"] = r.profit.q;
    j["S"] = r.profit.s;
    j["oracle_R"] = r.oracle_profit;
    j["oracle_abs_diff"] = r.oracle_diff;
    j["futurity_rate"] = r.futurity_rate;
    j["rates_route_R"] = r.rates_route;
    j["rates_route_R_printed_sign"] = r.rates_printed_sign;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "strategy        " << r.strategy << "\n"
      << "canonical       " << r.canonical << "\n"
      << "h               " << r.profit.h << "\n"
      << "r               " << r.profit.r << "\n"
      << "s               " << r.profit.s_count << "\n"
      << "Q               " << format_number(r.profit.q) << "\n"
      << "S               " << format_number(r.profit.s) << "\n"
      << "R               " << format_number(r.profit.profit) << "\n"
      << "oracle_R        " << format_number(r.oracle_profit) << "\n"
      << "oracle_abs_diff " << format_number(r.oracle_diff) << "\n"
      << "futurity_rate   " << format_number(r.futurity_rate) << "\n"
      << "rates_route_R   " << format_number(r.rates_route) << "\n"
      << "rates_route_R (printed sign) " << format_number(r.rates_printed_sign) << "\n";
  return out.str();
}

// ---- sweep -----------------------------------------------------------------

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.strategies.empty()) throw ValidationError("sweep needs at least one strategy");
  const std::vector<double> grid = probability_grid(spec.grid_step);
  const std::vector<double> pas = axis(spec.fix_pa, grid, "--fix-pa");
  const std::vector<double> pbs = axis(spec.fix_pb, grid, "--fix-pb");

  std::vector<SweepRow> rows(spec.strategies.size() * pas.size() * pbs.size());
  parallel_for(rows.size(), spec.threads, [&](std::size_t idx) {
    const std::size_t ib = idx % pbs.size();
    const std::size_t ia = (idx / pbs.size()) % pas.size();
    const Strategy& strategy = spec.strategies[idx / (pbs.size() * pas.size())];
    const ArmProbabilities probs(pas[ia], pbs[ib]);
    const ProfitReport report = exact_profit(strategy, probs);

    SweepRow& row = rows[idx];
    row.strategy = strategy.to_string();
    row.p_a = pas[ia];
    row.p_b = pbs[ib];
    row.r_exact = report.profit;
    row.q = report.q;
    row.s = report.s;
    const double oracle = oracle_profit(fair_two_armed_spec(row.strategy, row.p_a, row.p_b)).casino_profit;
    row.oracle_diff = std::abs(oracle - row.r_exact);
    if (!(row.oracle_diff <= kOracleTolerance))
      throw NumericFailure("closed form and chain oracle disagree at " + row.strategy + " (" +
                           format_number(row.p_a) + ", " + format_number(row.p_b) + ")");
  });
  return rows;
}

std::string render_sweep(const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::kJson) {
    Json j = Json::array();
    for (const SweepRow& r : rows)
      j.push_back({{"strategy", r.strategy}, {"p_a", r.p_a}, {"p_b", r.p_b}, {"r_exact", r.r_exact},
                   {"q", r.q}, {"s", r.s}});
    return j.dump(2) + "\n";
  }
  std::string out = "strategy,p_a,p_b,r_exact,q,s\n";
  for (const SweepRow& r : rows)
    out += r.strategy + "," + format_number(r.p_a) + "," + format_number(r.p_b) + "," + format_number(r.r_exact) +
           "," + format_number(r.q) + "," + format_number(r.s) + "\n";
  return out;
}

// ---- random-sweep ----------------------------------------------------------

std::vector<RandomSweepRow> run_random_sweep(const RandomSweepSpec& spec) {
  if (spec.gammas.empty()) throw ValidationError("random-sweep needs at least one gamma");
  for (double g : spec.gammas)
    if (!(g >= 0.0 && g <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  const std::vector<double> grid = probability_grid(spec.grid_step);
  const std::vector<double> pas = axis(spec.fix_pa, grid, "--fix-pa");
  const std::vector<double> pbs = axis(spec.fix_pb, grid, "--fix-pb");

  std::vector<RandomSweepRow> rows(spec.gammas.size() * pas.size() * pbs.size());
  parallel_for(rows.size(), spec.threads, [&](std::size_t idx) {
    RandomSweepRow& row = rows[idx];
    row.p_b = pbs[idx % pbs.size()];
    row.p_a = pas[(idx / pbs.size()) % pas.size()];
    row.gamma = spec.gammas[idx / (pbs.size() * pas.size())];
    row.r_c = random_mix_profit(row.gamma, ArmProbabilities(row.p_a, row.p_b));
  });
  return rows;
}

std::string render_random_sweep(const std::vector<RandomSweepRow>& rows, const RandomSweepSpec& spec,
                                Format format) {
  if (format == Format::kJson) {
    Json j = Json::array();
    for (const RandomSweepRow& r : rows) {
      Json row = {{"gamma", r.gamma}, {"p_a", r.p_a}, {"p_b", r.p_b}, {"r_c", r.r_c}};
      if (spec.printed_sign) row["r_c_printed_sign"] = -r.r_c;
      j.push_back(row);
    }
    return j.dump(2) + "\n";
  }
  std::string out = spec.printed_sign ? "gamma,p_a,p_b,r_c,r_c_printed_sign\n" : "gamma,p_a,p_b,r_c\n";
  for (const RandomSweepRow& r : rows) {
    out += format_number(r.gamma) + "," + format_number(r.p_a) + "," + format_number(r.p_b) + "," +
           format_number(r.r_c);
    if (spec.printed_sign) out += "," + format_number(-r.r_c);
    out += "\n";
  }
  return out;
}

// ---- simulate / trajectory -------------------------------------------------

ChainSpec make_chain_spec(std::string_view labels, const ArmSource& source, int threshold) {
  const std::string seq = parse_labels(labels);
  if (source.p_a || source.p_b) {
    if (source.machine) throw ValidationError("give either --pa/--pb or --machine, not both");
    // Missing probabilities only matter if the sequence uses that arm.
    const double p_a = source.p_a.value_or(0.5);
    const double p_b = source.p_b.value_or(0.5);
    if ((!source.p_a && seq.find('A') != std::string::npos) || (!source.p_b && seq.find('B') != std::string::npos))
      throw ValidationError("strategy uses an arm whose probability was not given");
    return fair_two_armed_spec(seq, p_a, p_b, threshold);
  }
  return machine_spec(source.machine.value_or(mills_machine()), seq, source.reduction, threshold);
}

SimulateOutput run_simulate(const ChainSpec& spec, const SimConfig& config) {
  SimulateOutput out;
  out.seed = config.master_seed;
  out.result = replicate(spec, config);
  out.oracle_value = oracle_profit(spec).casino_profit;
  const double gap = out.result.grand_mean - out.oracle_value;
  if (out.result.se > 0.0)
    out.z_score = gap / out.result.se;
  else
    out.z_score = gap == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string render_replications_csv(const SimResult& result) {
  std::string out = "replication,mean_profit,literal_mean_profit\n";
  for (std::size_t k = 0; k < result.replication_means.size(); ++k)
    out += std::to_string(k) + "," + format_number(result.replication_means[k]) + "," +
           format_number(result.replication_literal_means[k]) + "\n";
  return out;
}

std::string render_simulate_summary(const SimulateOutput& out, const ChainSpec& spec, const SimConfig& config) {
  Json j;
  j["schema_version"] = 1;
  j["strategy"] = spec.labels;
  j["threshold"] = spec.threshold;
  j["coups"] = config.coups;
  j["replications"] = config.replications;
  j["seed"] = out.seed;
  j["grand_mean"] = number_or_null(out.result.grand_mean);
  j["sd"] = number_or_null(out.result.sd);
  j["se"] = number_or_null(out.result.se);
  j["oracle_value"] = number_or_null(out.oracle_value);
  j["z_score"] = number_or_null(out.z_score);
  j["literal_grand_mean"] = number_or_null(out.result.literal_grand_mean);
  return j.dump(2) + "\n";
}

std::string render_trajectory(const std::vector<TrajectoryPoint>& points, Format format) {
  if (format == Format::kJson) {
    Json j = Json::array();
    for (const TrajectoryPoint& p : points) j.push_back({{"coup", p.coup}, {"cumulative_profit", p.cumulative_profit}});
    return j.dump(2) + "\n";
  }
  std::string out = "coup,cumulative_profit\n";
  for (const TrajectoryPoint& p : points) out += std::to_string(p.coup) + "," + format_number(p.cumulative_profit) + "\n";
  return out;
}

// ---- machine-info ----------------------------------------------------------

std::string render_machine_info(const Machine& machine, int threshold, Format format) {
  constexpr Reduction kReductions[] = {Reduction::kFair, Reduction::kEmpirical, Reduction::kRaw};

  Json j;
  j["schema_version"] = 1;
  j["threshold"] = threshold;
  j["modes"] = Json::array();
  for (const NamedMode* mode : {&machine.arm_a, &machine.arm_b}) {
    Json m;
    m["name"] = mode->name;
    m["entries"] = Json::array();
    for (const RewardEntry& e : mode->distribution.entries()) m["entries"].push_back({e.reward, e.probability});
    m["win_probability"] = win_probability(mode->distribution);
    for (Reduction red : kReductions) {
      Json arm;
      if (red != Reduction::kRaw) {
        const TwoPointArm two =
            red == Reduction::kFair ? fair_two_point(mode->distribution) : empirical_two_point(mode->distribution);
        arm["p"] = two.p;
        arm["u"] = two.u;
      }
      ChainSpec solo;
      solo.labels = "A";
      solo.arms.emplace('A', reduce(mode->distribution, red));
      solo.threshold = threshold;
      arm["single_arm_oracle_profit"] = oracle_profit(solo).casino_profit;
      m[std::string(reduction_name(red))] = arm;
    }
    j["modes"].push_back(m);
  }
  j["strategies"] = Json::array();
  for (std::string_view strategy : kReferenceStrategies) {
    Json s;
    s["strategy"] = strategy;
    for (Reduction red : kReductions)
      s[std::string(reduction_name(red)) + "_oracle_profit"] =
          oracle_profit(machine_spec(machine, strategy, red, threshold)).casino_profit;
    j["strategies"].push_back(s);
  }
  if (format == Format::kJson) return j.dump(2) + "\n";

  std::ostringstream out;
  out << "futurity threshold J = " << threshold << "\n";
  for (const Json& m : j["modes"]) {
    out << "mode " << m["name"].get<std::string>() << "  (arm win probability "
        << format_number(m["win_probability"].get<double>()) << ")\n";
    for (const Json& e : m["entries"])
      out << "  reward " << format_number(e[0].get<double>()) << "  probability " << format_number(e[1].get<double>())
          << "\n";
    for (Reduction red : kReductions) {
      const Json& arm = m[std::string(reduction_name(red))];
      out << "  " << reduction_name(red) << ":";
      if (arm.contains("u")) out << " p=" << format_number(arm["p"].get<double>()) << " u=" << format_number(arm["u"].get<double>());
      out << " single-arm profit=" << format_number(arm["single_arm_oracle_profit"].get<double>()) << "\n";
    }
  }
  out << "two-armed oracle profit per coup (fair / empirical / raw):\n";
  for (const Json& s : j["strategies"])
    out << "  " << s["strategy"].get<std::string>() << "  " << format_number(s["fair_oracle_profit"].get<double>())
        << "  " << format_number(s["empirical_oracle_profit"].get<double>()) << "  "
        << format_number(s["raw_oracle_profit"].get<double>()) << "\n";
  return out.str();
}

}  // namespace futurity::experiments
