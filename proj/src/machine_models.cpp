#include "futurity/machine_models.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "futurity/closed_form.hpp"
#include "futurity/errors.hpp"

namespace futurity {

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw InvalidDistribution("line " + std::to_string(line) + ": not a number: '" + std::string(token) + "'");
  return value;
}

}  // namespace

MultipointDistribution::MultipointDistribution(std::vector<RewardEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidDistribution("distribution has no entries");
  std::set<double> rewards;
  double total = 0.0;
  for (const RewardEntry& e : entries_) {
    if (!std::isfinite(e.reward) || e.reward < 0.0)
      throw InvalidDistribution("reward must be finite and nonnegative: " + shortest(e.reward));
    if (!(e.probability >= 0.0 && e.probability <= 1.0))
      throw InvalidDistribution("probability outside [0, 1]: " + shortest(e.probability));
    if (!rewards.insert(e.reward).second) throw InvalidDistribution("duplicate reward " + shortest(e.reward));
    total += e.probability;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidDistribution("probabilities sum to " + shortest(total) + ", not 1");
}

ArmModel MultipointDistribution::to_arm_model() const {
  std::vector<Outcome> outcomes;
  outcomes.reserve(entries_.size());
  for (const RewardEntry& e : entries_) outcomes.push_back({e.reward, e.probability});
  return ArmModel::multipoint(std::move(outcomes));
}

std::pair<MultipointDistribution, MultipointDistribution> mills_modes() {
  const double rewards[] = {0, 3, 5, 10, 14, 18, 150};
  const double mode_e[] = {0.968, 0.003, 0.007, 0.018, 0.004, 0, 0};
  const double mode_o[] = {0.357, 0.576, 0.064, 0, 0, 0.002, 0.001};
  std::vector<RewardEntry> e, o;
  for (std::size_t i = 0; i < 7; ++i) {
    e.push_back({rewards[i], mode_e[i]});
    o.push_back({rewards[i], mode_o[i]});
  }
  return {MultipointDistribution(std::move(e)), MultipointDistribution(std::move(o))};
}

Machine mills_machine() {
  auto [e, o] = mills_modes();
  return Machine{{"E", std::move(e)}, {"O", std::move(o)}};
}

double win_probability(const MultipointDistribution& dist) {
  double loss = 0.0;
  for (const RewardEntry& e : dist.entries())
    if (e.reward == 0.0) loss += e.probability;
  return 1.0 - loss;
}

TwoPointArm fair_two_point(const MultipointDistribution& dist) {
  const double p = win_probability(dist);
  if (!(p > 0.0 && p < 1.0)) throw DegenerateMode("mode win probability is " + shortest(p) + "; need 0 < p < 1");
  return {p, fair_payout(p)};
}

TwoPointArm empirical_two_point(const MultipointDistribution& dist) {
  const double p = win_probability(dist);
  if (!(p > 0.0)) throw DegenerateMode("mode never pays");
  double paid = 0.0;
  for (const RewardEntry& e : dist.entries()) paid += e.reward * e.probability;
  return {p, paid / p};
}

Reduction parse_reduction(std::string_view name) {
  if (name == "fair") return Reduction::kFair;
  if (name == "empirical") return Reduction::kEmpirical;
  if (name == "raw") return Reduction::kRaw;
  throw ValidationError("unknown reduction '" + std::string(name) + "' (expected fair, empirical or raw)");
}

std::string_view reduction_name(Reduction reduction) {
  switch (reduction) {
    case Reduction::kFair:
      return "fair";
    case Reduction::kEmpirical:
      return "empirical";
    case Reduction::kRaw:
      return "raw";
  }
  return "unknown";
}

ArmModel reduce(const MultipointDistribution& dist, Reduction reduction) {
  switch (reduction) {
    case Reduction::kFair:
      return fair_two_point(dist).to_arm_model();
    case Reduction::kEmpirical:
      return empirical_two_point(dist).to_arm_model();
    case Reduction::kRaw:
      return dist.to_arm_model();
  }
  throw ValidationError("unknown reduction");
}

ChainSpec machine_spec(const Machine& machine, std::string_view labels, Reduction reduction, int threshold) {
  ChainSpec spec;
  spec.labels = std::string(labels);
  spec.arms.emplace('A', reduce(machine.arm_a.distribution, reduction));
  spec.arms.emplace('B', reduce(machine.arm_b.distribution, reduction));
  spec.threshold = threshold;
  spec.validate();
  return spec;
}

Machine parse_machine(std::string_view text) {
  struct Section {
    std::string name;
    std::vector<RewardEntry> entries;
  };
  std::vector<Section> sections;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::istringstream fields{std::string(line)};
    std::string first, second, extra;
    fields >> first >> second >> extra;
    if (first == "mode") {
      if (second.empty() || !extra.empty())
        throw InvalidDistribution("line " + std::to_string(line_no) + ": expected 'mode <name>'");
      sections.push_back({second, {}});
      continue;
    }
    if (sections.empty())
      throw InvalidDistribution("line " + std::to_string(line_no) + ": entry before any 'mode' header");
    if (second.empty() || !extra.empty())
      throw InvalidDistribution("line " + std::to_string(line_no) + ": expected 'reward probability'");
    sections.back().entries.push_back({parse_number(first, line_no), parse_number(second, line_no)});
  }

  if (sections.size() != 2)
    throw InvalidDistribution("machine file must define exactly two modes, found " + std::to_string(sections.size()));
  return Machine{{sections[0].name, MultipointDistribution(std::move(sections[0].entries))},
                 {sections[1].name, MultipointDistribution(std::move(sections[1].entries))}};
}

Machine load_machine(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open machine file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

std::string format_machine(const Machine& machine) {
  std::string out = "# reward probability\n";
  for (const NamedMode* mode : {&machine.arm_a, &machine.arm_b}) {
    out += "mode " + mode->name + "\n";
    for (const RewardEntry& e : mode->distribution.entries())
      out += shortest(e.reward) + " " + shortest(e.probability) + "\n";
  }
  return out;
}

}  // namespace futurity
