// Copyright 2026 The qbridge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbridge/cli.h"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qbridge/protocol_sim.h"

namespace qbridge::cli {
namespace {

namespace fs = std::filesystem;
using strategy::BiasPair;
using strategy::JointInputDistribution;
using strategy::MeasurementSettings;
using strategy::ProductForm;

// Text file sums are accepted up to this slack and then renormalized.
constexpr double kFileSumTolerance = 1e-9;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string strip_comment(std::string_view line) {
  return trim(line.substr(0, line.find('#')));
}

double parse_real(std::string_view text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError("invalid number for " + what + ": '" + t + "'");
  }
  return value;
}

double parse_probability(std::string_view text, const std::string& what) {
  const double value = parse_real(text, what);
  if (value < 0.0 || value > 1.0) {
    throw UsageError(what + " must lie in [0, 1], got " + trim(text));
  }
  return value;
}

double require_probability(double value, const std::string& what) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw UsageError(what + " must lie in [0, 1]");
  }
  return value;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (!out.emplace(key, trim(std::string_view(body).substr(eq + 1))).second) {
      throw UsageError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string paint(const std::string& text, bool red, const Options& options) {
  if (!options.color || !red) return text;
  return "\033[31m" + text + "\033[0m";
}

std::string show_bid(const bridge::Bid& bid, const Options& options) {
  const bool red = bid.denomination() == bridge::Denomination::kHearts ||
                   bid.denomination() == bridge::Denomination::kDiamonds;
  return paint(bid.to_symbol(), red, options);
}

void line(std::ostream& out, const std::string& label, const std::string& value) {
  out << label;
  for (std::size_t i = label.size(); i < 22; ++i) out << ' ';
  out << ": " << value << '\n';
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

// --- subcommands -----------------------------------------------------------

struct CurvesArgs {
  std::string p_prime;
  std::string q;
  std::string out;
};

int cmd_curves(const CurvesArgs& a, std::ostream& out) {
  const Axis p_prime = parse_axis(a.p_prime, "--p-prime");
  const Axis q = parse_axis(a.q, "--q");
  if (p_prime.ranged) throw UsageError("curves takes a single --p-prime value");
  if (!q.ranged) throw UsageError("curves needs a --q range min:max:steps");
  emit(curves_csv(p_prime.min, q), a.out, out);
  return kOk;
}

int cmd_surface(const CurvesArgs& a, std::ostream& out) {
  const Axis p_prime = parse_axis(a.p_prime, "--p-prime");
  const Axis q = parse_axis(a.q, "--q");
  if (!p_prime.ranged || !q.ranged) {
    throw UsageError("surface needs ranges min:max:steps for --p-prime and --q");
  }
  emit(surface_csv(p_prime, q), a.out, out);
  return kOk;
}

struct ProductArgs {
  std::optional<double> p0;
  std::optional<double> p1;
  std::optional<double> q;
  std::string joint;
};

JointInputDistribution resolve_distribution(const ProductArgs& a, const ProductForm& defaults) {
  if (!a.joint.empty()) {
    if (a.p0 || a.p1 || a.q) throw UsageError("--joint cannot be combined with --p0/--p1/--q");
    return to_joint(parse_distribution(read_file(a.joint)));
  }
  ProductForm form = defaults;
  if (a.p0) form.p0_prime = require_probability(*a.p0, "--p0");
  if (a.p1) form.p1_prime = require_probability(*a.p1, "--p1");
  if (a.q) form.q = require_probability(*a.q, "--q");
  return strategy::expand_product(form);
}

const ProductForm kRkbForm{0.5, 0.55, 0.75};

struct SimulateArgs {
  ProductArgs dist;
  std::int64_t shots = 1000000;
  std::uint64_t seed = 42;
  double efficiency = 1.0;
  unsigned workers = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.shots < 1) throw UsageError("--shots must be at least 1");
  if (!(a.efficiency > 0.0 && a.efficiency <= 1.0)) {
    throw UsageError("--efficiency must lie in (0, 1]");
  }
  const JointInputDistribution dist = resolve_distribution(a.dist, kRkbForm);
  const BiasPair bias = strategy::bias_pair(dist);
  const MeasurementSettings settings = strategy::optimal_settings(bias);
  const double expected = strategy::protocol_success(dist, settings);

  sim::SimulationConfig config;
  config.dist = dist;
  config.settings = settings;
  config.shots = static_cast<std::uint64_t>(a.shots);
  config.seed = a.seed;
  config.efficiency = a.efficiency;
  config.workers = a.workers;
  const sim::SimulationResult r = sim::run_trials(config);

  double z = 0.0;
  if (r.std_error > 0.0) {
    z = (r.empirical_i - expected) / r.std_error;
  } else if (r.empirical_i != expected) {
    z = std::copysign(INFINITY, r.empirical_i - expected);
  }
  line(out, "xor bias p", fixed7(bias.p));
  line(out, "q", fixed7(bias.q));
  line(out, "shots", std::to_string(r.shots));
  line(out, "seed", std::to_string(a.seed));
  line(out, "efficiency", fixed7(a.efficiency));
  line(out, "closed-form I_Q", fixed7(expected));
  line(out, "empirical I", fixed7(r.empirical_i));
  line(out, "standard error", fixed7(r.std_error));
  line(out, "z-score", fixed7(z));
  line(out, "mean herald attempts", fixed7(r.mean_herald_attempts));
  return kOk;
}

struct BidArgs {
  std::string scenario = "rkb";
  std::optional<int> keycards;
  std::string queen;
  std::string interest;
  std::string attitude;
  std::string parity;
  std::uint64_t seed = 0;
  ProductArgs dist;
};

int cmd_bid(const BidArgs& a, std::ostream& out, const Options& options) {
  bool rkb = true;
  if (a.scenario == "defense") {
    rkb = false;
  } else if (a.scenario != "rkb") {
    throw UsageError("--scenario must be rkb or defense");
  }

  bridge::ProtocolInputs inputs{0, 0};
  std::string holding_text;
  if (rkb) {
    if (!a.keycards) throw UsageError("bid needs --keycards 0..5");
    if (a.queen != "yes" && a.queen != "no") throw UsageError("bid needs --queen yes|no");
    if (!a.attitude.empty() || !a.parity.empty()) {
      throw UsageError("--attitude/--parity belong to --scenario defense");
    }
    if (*a.keycards < 0 || *a.keycards > 5) throw UsageError("--keycards must be 0..5");
    const bridge::RkbHolding holding(*a.keycards, a.queen == "yes");
    holding_text = std::to_string(holding.keycards) + " keycards, " +
                   (holding.has_trump_queen ? "trump queen" : "no trump queen");
    const bridge::RkbAnswer answer = bridge::rkb_encode(holding);
    if (const auto* bypass = std::get_if<bridge::Bid>(&answer)) {
      line(out, "scenario", "rkb");
      line(out, "holding", holding_text);
      line(out, "bypass bid", show_bid(*bypass, options));
      line(out, "protocol round", "none (keycard bit undefined)");
      return kOk;
    }
    inputs = std::get<bridge::ProtocolInputs>(answer);
  } else {
    if (a.keycards || !a.queen.empty()) {
      throw UsageError("--keycards/--queen belong to --scenario rkb");
    }
    bridge::DefenseHolding holding{};
    if (a.attitude == "encourage") {
      holding.attitude = bridge::Attitude::kEncourage;
    } else if (a.attitude == "discourage") {
      holding.attitude = bridge::Attitude::kDiscourage;
    } else {
      throw UsageError("defense needs --attitude encourage|discourage");
    }
    if (a.parity == "odd") {
      holding.suit_count_parity = bridge::Parity::kOdd;
    } else if (a.parity == "even") {
      holding.suit_count_parity = bridge::Parity::kEven;
    } else {
      throw UsageError("defense needs --parity odd|even");
    }
    holding_text = std::string(a.attitude) + ", " + a.parity + " number of cards";
    inputs = bridge::defense_encode(holding);
  }

  int b = 0;
  const std::string interest =
      !a.interest.empty() ? a.interest : (rkb ? std::string("keycards") : std::string("attitude"));
  if (interest == (rkb ? "keycards" : "attitude")) {
    b = 0;
  } else if (interest == (rkb ? "queen" : "count")) {
    b = 1;
  } else {
    throw UsageError(rkb ? "--interest must be keycards or queen"
                         : "--interest must be attitude or count");
  }

  const bridge::ScenarioConfig defaults =
      rkb ? bridge::ScenarioConfig::rkb_defaults() : bridge::ScenarioConfig::defense_defaults();
  const JointInputDistribution dist =
      resolve_distribution(a.dist, {defaults.p0_prime, defaults.p1_prime, defaults.q});
  const MeasurementSettings settings = strategy::optimal_settings(strategy::bias_pair(dist));

  sim::SplitMix64 rng = sim::SplitMix64::for_shot(a.seed, 0);
  const sim::RoundRecord round = sim::run_round({inputs.a0, inputs.a1, b}, settings, rng);

  std::string message;
  std::string guess;
  if (rkb) {
    message = show_bid(bridge::rkb_message_bid(round.m), options);
    if (b == 0) {
      guess = round.R == 0 ? "0 or 3 keycards" : "1 or 4 keycards";
    } else {
      guess = round.R == 0 ? "has queen" : "no queen";
    }
  } else {
    message = bridge::describe(bridge::defense_message_card(round.m));
    if (b == 0) {
      guess = round.R == 0 ? "encourage" : "discourage";
    } else {
      guess = round.R == 0 ? "odd number of cards" : "even number of cards";
    }
  }

  line(out, "scenario", rkb ? "rkb" : "defense");
  line(out, "holding", holding_text);
  line(out, "inputs", "a0=" + std::to_string(round.a0) + " a1=" + std::to_string(round.a1));
  line(out, "interest", interest + " (b=" + std::to_string(b) + ")");
  line(out, "alice setting", "a=" + std::to_string(round.a) + " angle " +
                                 fixed7(round.a == 0 ? settings.alpha0 : settings.alpha1));
  line(out, "bob setting", "b=" + std::to_string(b) + " angle " +
                               fixed7(b == 0 ? settings.gamma0 : settings.gamma1));
  line(out, "outcomes", "A=" + std::to_string(round.A) + " B=" + std::to_string(round.B));
  line(out, rkb ? "message bid" : "message card", message + " (m=" + std::to_string(round.m) + ")");
  line(out, "guess", guess + " (R=" + std::to_string(round.R) + ")");
  line(out, "correct", yes_no(round.success));
  return kOk;
}

struct AnglesArgs {
  std::optional<double> p_prime;
  std::optional<double> p;
  std::optional<double> q;
};

int cmd_angles(const AnglesArgs& a, std::ostream& out) {
  if (a.p_prime.has_value() == a.p.has_value()) {
    throw UsageError("angles needs exactly one of --p-prime or --p");
  }
  if (!a.q) throw UsageError("angles needs --q");
  BiasPair bias;
  bias.q = require_probability(*a.q, "--q");
  if (a.p_prime) {
    bias.p = strategy::xor_bias_symmetric(require_probability(*a.p_prime, "--p-prime"));
  } else {
    bias.p = require_probability(*a.p, "--p");
  }
  const strategy::BetaResult beta = strategy::optimal_beta(bias);
  if (!beta.in_region) {
    throw strategy::OutOfRegionError(
        "out of region: cos(beta) = " + fixed7(beta.cos_beta) +
        " (needs |cos(beta)| <= 1 and p, q strictly between 0 and 1)");
  }
  const MeasurementSettings s = strategy::optimal_settings(bias);
  const strategy::HwpAngles h = strategy::hwp_angles(bias);
  line(out, "p", fixed7(bias.p));
  line(out, "q", fixed7(bias.q));
  line(out, "cos(beta)", fixed7(beta.cos_beta));
  line(out, "beta", fixed7(s.beta));
  line(out, "A1 bloch angle", fixed7(s.alpha0));
  line(out, "A2 bloch angle", fixed7(s.alpha1));
  line(out, "B1 bloch angle", fixed7(s.gamma0));
  line(out, "B2 bloch angle", fixed7(s.gamma1));
  line(out, "phi_A1", fixed7(h.phi_a1));
  line(out, "phi_A2", fixed7(h.phi_a2));
  line(out, "phi_B1", fixed7(h.phi_b1));
  line(out, "phi_B2", fixed7(h.phi_b2));
  line(out, "residual_A1", fixed7(h.residual_a1));
  line(out, "residual_A2", fixed7(h.residual_a2));
  line(out, "consistency residual", fixed7(h.consistency_residual));
  return kOk;
}

int cmd_classical_opt(const ProductArgs& a, std::ostream& out) {
  const JointInputDistribution dist = resolve_distribution(a, kRkbForm);
  const strategy::ClassicalOptimum opt = strategy::classical_value_enumerated(dist);
  const strategy::ClosedFormInputs in = strategy::closed_form_inputs(dist);
  const double closed = strategy::classical_value_closed_form(in.q, in.pa0_given_b0,
                                                              in.pa1_given_b1);
  line(out, "enumerated optimum", fixed7(opt.value));
  line(out, "candidates", std::to_string(opt.candidates));
  line(out, "optimal strategies", std::to_string(opt.optima.size()));
  for (const auto& s : opt.optima) out << "  " << s.describe() << '\n';
  line(out, "closed form", fixed7(closed));
  if (std::abs(closed - opt.value) <= strategy::kProbTolerance) {
    line(out, "closed form check", "agrees");
  } else {
    line(out, "closed form check",
         "DIFFERS by " + fixed7(opt.value - closed) + " (inputs are correlated; enumeration is exact)");
  }
  return kOk;
}

struct ScenarioArgs {
  std::string scenario;
  std::string config;
  std::optional<double> p0;
  std::optional<double> p1;
  std::optional<double> q;
  std::optional<double> bypass;
};

int cmd_scenario(const ScenarioArgs& a, std::ostream& out) {
  bridge::ScenarioConfig config = bridge::ScenarioConfig::rkb_defaults();
  if (!a.config.empty()) config = parse_scenario(read_file(a.config));
  if (!a.scenario.empty()) {
    if (a.scenario == "rkb" || a.scenario == "defense") {
      const bool defense = a.scenario == "defense";
      if (a.config.empty()) {
        config = defense ? bridge::ScenarioConfig::defense_defaults()
                         : bridge::ScenarioConfig::rkb_defaults();
      }
      config.kind = defense ? bridge::ScenarioKind::kDefense : bridge::ScenarioKind::kRkb;
    } else {
      throw UsageError("--scenario must be rkb or defense");
    }
  }
  if (a.p0) config.p0_prime = require_probability(*a.p0, "--p0");
  if (a.p1) config.p1_prime = require_probability(*a.p1, "--p1");
  if (a.q) config.q = require_probability(*a.q, "--q");
  if (a.bypass) config.bypass_probability = require_probability(*a.bypass, "--bypass");
  if (config.kind == bridge::ScenarioKind::kDefense && config.bypass_probability != 0.0) {
    throw UsageError("bypass applies to the rkb scenario only");
  }

  const strategy::StrategyReport r = bridge::scenario_evaluate(config);
  line(out, "scenario", config.kind == bridge::ScenarioKind::kRkb ? "rkb" : "defense");
  line(out, "p0'", fixed7(config.p0_prime));
  line(out, "p1'", fixed7(config.p1_prime));
  line(out, "q", fixed7(config.q));
  if (config.kind == bridge::ScenarioKind::kRkb) {
    line(out, "bypass probability", fixed7(config.bypass_probability));
  }
  line(out, "classical value", fixed7(r.classical_value));
  line(out, "quantum value", fixed7(r.quantum_value));
  line(out, "advantage", fixed7(r.advantage));
  line(out, "in region", yes_no(r.quantum_in_region));
  if (r.protocol_value) line(out, "xor protocol value", fixed7(*r.protocol_value));
  if (r.settings) line(out, "beta", fixed7(r.settings->beta));
  return kOk;
}

}  // namespace

double Axis::at(int i) const {
  if (!ranged) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * i / (steps - 1);
}

Axis parse_axis(std::string_view text, const char* flag) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError(std::string(flag) + " is required");
  const auto c1 = t.find(':');
  if (c1 == std::string::npos) {
    const double v = parse_probability(t, flag);
    return {v, v, 1, false};
  }
  const auto c2 = t.find(':', c1 + 1);
  if (c2 == std::string::npos || t.find(':', c2 + 1) != std::string::npos) {
    throw UsageError(std::string(flag) + " range must be min:max:steps");
  }
  Axis axis;
  axis.ranged = true;
  axis.min = parse_probability(std::string_view(t).substr(0, c1), flag);
  axis.max = parse_probability(std::string_view(t).substr(c1 + 1, c2 - c1 - 1), flag);
  const std::string steps = t.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), axis.steps);
  if (steps.empty() || ec != std::errc() || ptr != steps.data() + steps.size()) {
    throw UsageError(std::string(flag) + " steps must be an integer");
  }
  if (axis.steps < 2) throw UsageError(std::string(flag) + " needs at least 2 steps");
  if (!(axis.min < axis.max)) throw UsageError(std::string(flag) + " needs min < max");
  return axis;
}

std::string fixed7(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", value);
  std::string s(buf);
  if (s == "-0.0000000") s = "0.0000000";
  return s;
}

namespace {

struct CurvePoint {
  double i_classical;
  double i_quantum;
  bool in_region;
};

CurvePoint curve_point(double p_prime, double q) {
  const BiasPair bias{strategy::xor_bias_symmetric(p_prime), q};
  const double classical = strategy::classical_value_closed_form(q, p_prime, p_prime);
  const strategy::QuantumValue quantum = strategy::quantum_value_closed_form(bias);
  return {classical, std::max(quantum.value, classical), quantum.in_region};
}

}  // namespace

std::string curves_csv(double p_prime, const Axis& q) {
  std::string csv = "q,i_classical,i_quantum,in_region\n";
  for (int i = 0; i < q.size(); ++i) {
    const double qv = q.at(i);
    const CurvePoint pt = curve_point(p_prime, qv);
    csv += fixed7(qv) + ',' + fixed7(pt.i_classical) + ',' + fixed7(pt.i_quantum) + ',' +
           (pt.in_region ? "true" : "false") + '\n';
  }
  return csv;
}

std::string surface_csv(const Axis& p_prime, const Axis& q) {
  std::string csv = "p_prime,p,q,i_classical,i_quantum,in_region\n";
  for (int i = 0; i < p_prime.size(); ++i) {
    const double pp = p_prime.at(i);
    const double p = strategy::xor_bias_symmetric(pp);
    for (int j = 0; j < q.size(); ++j) {
      const double qv = q.at(j);
      const CurvePoint pt = curve_point(pp, qv);
      csv += fixed7(pp) + ',' + fixed7(p) + ',' + fixed7(qv) + ',' + fixed7(pt.i_classical) +
             ',' + fixed7(pt.i_quantum) + ',' + (pt.in_region ? "true" : "false") + '\n';
    }
  }
  return csv;
}

DistributionSpec parse_distribution(std::string_view text) {
  std::string body;
  {
    std::istringstream in{std::string(text)};
    std::string l;
    while (std::getline(in, l)) body += strip_comment(l) + '\n';
  }
  if (body.find('=') != std::string::npos) {
    const auto kv = parse_key_values(text);
    ProductForm form{0.0, 0.0, 0.0};
    for (const char* key : {"p0", "p1", "q"}) {
      if (!kv.count(key)) throw UsageError(std::string("product form is missing '") + key + "'");
    }
    for (const auto& [key, value] : kv) {
      if (key == "p0") {
        form.p0_prime = parse_probability(value, "p0");
      } else if (key == "p1") {
        form.p1_prime = parse_probability(value, "p1");
      } else if (key == "q") {
        form.q = parse_probability(value, "q");
      } else {
        throw UsageError("unknown key '" + key + "' in product form");
      }
    }
    return form;
  }

  std::istringstream in(body);
  std::array<double, 8> probs{};
  std::string token;
  int n = 0;
  double sum = 0.0;
  while (in >> token) {
    if (n == 8) throw UsageError("joint distribution has more than 8 entries");
    const double v = parse_real(token, "joint entry " + std::to_string(n));
    if (v < 0.0) throw UsageError("joint distribution has a negative entry");
    probs[n++] = v;
    sum += v;
  }
  if (n != 8) throw UsageError("joint distribution needs 8 entries, got " + std::to_string(n));
  if (std::abs(sum - 1.0) > kFileSumTolerance) {
    throw UsageError("joint distribution is not normalized (sum = " + fixed7(sum) + ")");
  }
  for (double& v : probs) v /= sum;
  try {
    return JointInputDistribution(probs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

JointInputDistribution to_joint(const DistributionSpec& spec) {
  if (const auto* form = std::get_if<ProductForm>(&spec)) return strategy::expand_product(*form);
  return std::get<JointInputDistribution>(spec);
}

bridge::ScenarioConfig parse_scenario(std::string_view text) {
  const auto kv = parse_key_values(text);
  bridge::ScenarioConfig config = bridge::ScenarioConfig::rkb_defaults();
  if (auto it = kv.find("kind"); it != kv.end()) {
    if (it->second == "defense") {
      config = bridge::ScenarioConfig::defense_defaults();
    } else if (it->second != "rkb") {
      throw UsageError("kind must be rkb or defense");
    }
  }
  for (const auto& [key, value] : kv) {
    if (key == "kind") continue;
    if (key == "p0") {
      config.p0_prime = parse_probability(value, "p0");
    } else if (key == "p1") {
      config.p1_prime = parse_probability(value, "p1");
    } else if (key == "q") {
      config.q = parse_probability(value, "q");
    } else if (key == "bypass") {
      config.bypass_probability = parse_probability(value, "bypass");
    } else {
      throw UsageError("unknown key '" + key + "' in scenario file");
    }
  }
  return config;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Options& options) {
  CLI::App app{"Entanglement-assisted one-bit bidding: exact values, sweeps and simulation"};
  app.name(args.empty() ? "qbridge" : args[0]);
  app.require_subcommand(1);

  CurvesArgs curves;
  auto* curves_cmd = app.add_subcommand("curves", "I_C(q) and I_Q(q) at fixed p' as CSV");
  curves_cmd->add_option("--p-prime", curves.p_prime, "P(hand bit = 0), fixed")->required();
  curves_cmd->add_option("--q", curves.q, "q range min:max:steps")->required();
  curves_cmd->add_option("--out", curves.out, "output CSV (stdout if omitted)");

  CurvesArgs surface;
  auto* surface_cmd = app.add_subcommand("surface", "I_C and I_Q over a (p', q) grid as CSV");
  surface_cmd->add_option("--p-prime", surface.p_prime, "p' range min:max:steps")->required();
  surface_cmd->add_option("--q", surface.q, "q range min:max:steps")->required();
  surface_cmd->add_option("--out", surface.out, "output CSV (stdout if omitted)");

  auto add_product = [](CLI::App* cmd, ProductArgs& a) {
    cmd->add_option("--p0", a.p0, "P(a0 = 0)");
    cmd->add_option("--p1", a.p1, "P(a1 = 0)");
    cmd->add_option("--q", a.q, "P(b = 0)");
    cmd->add_option("--joint", a.joint, "distribution file (key=value or 8 reals)");
  };

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run of the protocol");
  add_product(simulate_cmd, simulate.dist);
  simulate_cmd->add_option("--shots", simulate.shots, "number of rounds");
  simulate_cmd->add_option("--seed", simulate.seed, "64-bit seed");
  simulate_cmd->add_option("--efficiency", simulate.efficiency, "detector efficiency in (0, 1]");
  simulate_cmd->add_option("--workers", simulate.workers, "threads (0: all cores)");

  BidArgs bid;
  auto* bid_cmd = app.add_subcommand("bid", "play one protocol round for a hand");
  bid_cmd->add_option("--scenario", bid.scenario, "rkb or defense");
  bid_cmd->add_option("--keycards", bid.keycards, "keycards held, 0..5 (rkb)");
  bid_cmd->add_option("--queen", bid.queen, "trump queen held: yes|no (rkb)");
  bid_cmd->add_option("--interest", bid.interest,
                      "bit the partner wants: keycards|queen (rkb), attitude|count (defense)");
  bid_cmd->add_option("--attitude", bid.attitude, "encourage|discourage (defense)");
  bid_cmd->add_option("--parity", bid.parity, "odd|even (defense)");
  bid_cmd->add_option("--seed", bid.seed, "64-bit seed");
  add_product(bid_cmd, bid.dist);

  AnglesArgs angles;
  auto* angles_cmd = app.add_subcommand("angles", "optimal observables and wave-plate angles");
  angles_cmd->add_option("--p-prime", angles.p_prime, "P(hand bit = 0), both bits");
  angles_cmd->add_option("--p", angles.p, "XOR bias P(a0 xor a1 = 0), instead of --p-prime");
  angles_cmd->add_option("--q", angles.q, "P(b = 0)");

  ProductArgs classical;
  auto* classical_cmd =
      app.add_subcommand("classical-opt", "exhaustive search over deterministic strategies");
  add_product(classical_cmd, classical);

  ScenarioArgs scenario;
  auto* scenario_cmd = app.add_subcommand("scenario", "classical vs quantum report for a scenario");
  scenario_cmd->add_option("--scenario", scenario.scenario, "rkb or defense");
  scenario_cmd->add_option("--config", scenario.config, "scenario file (key=value)");
  scenario_cmd->add_option("--p0", scenario.p0, "P(a0 = 0)");
  scenario_cmd->add_option("--p1", scenario.p1, "P(a1 = 0)");
  scenario_cmd->add_option("--q", scenario.q, "P(b = 0)");
  scenario_cmd->add_option("--bypass", scenario.bypass, "P(2 or 5 keycards) (rkb)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("qbridge");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (curves_cmd->parsed()) return cmd_curves(curves, out);
    if (surface_cmd->parsed()) return cmd_surface(surface, out);
    if (simulate_cmd->parsed()) return cmd_simulate(simulate, out);
    if (bid_cmd->parsed()) return cmd_bid(bid, out, options);
    if (angles_cmd->parsed()) return cmd_angles(angles, out);
    if (classical_cmd->parsed()) return cmd_classical_opt(classical, out);
    if (scenario_cmd->parsed()) return cmd_scenario(scenario, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const strategy::OutOfRegionError& e) {
    err << "error: " << e.what() << '\n';
    return kOutOfRegion;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}

}  // namespace qbridge::cli
