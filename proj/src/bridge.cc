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

#include "qbridge/bridge.h"

#include <array>
#include <cctype>

namespace qbridge::bridge {
namespace {

constexpr std::array<const char*, 5> kLetters = {"C", "D", "H", "S", "NT"};
constexpr std::array<const char*, 5> kSymbols = {"♣", "♦", "♥", "♠", "NT"};

void check_bit(int bit, const char* what) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument(std::string(what) + " must be 0 or 1");
  }
}

}  // namespace

Bid::Bid(int level, Denomination denomination) : level_(level), denomination_(denomination) {
  if (level < 1 || level > 7) {
    throw std::invalid_argument("bid level must be 1-7, got " + std::to_string(level));
  }
}

std::string Bid::to_string() const {
  return std::to_string(level_) + kLetters[static_cast<int>(denomination_)];
}

std::string Bid::to_symbol() const {
  return std::to_string(level_) + kSymbols[static_cast<int>(denomination_)];
}

Bid parse_bid(const std::string& text) {
  if (text.size() < 2 || text[0] < '1' || text[0] > '7') {
    throw std::invalid_argument("not a bid: '" + text + "'");
  }
  std::string rest = text.substr(1);
  for (int d = 0; d < 5; ++d) {
    std::string upper = rest;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == kLetters[d] || rest == kSymbols[d] || (d == 4 && upper == "N")) {
      return Bid(text[0] - '0', static_cast<Denomination>(d));
    }
  }
  throw std::invalid_argument("not a bid: '" + text + "'");
}

Bid safety_level() { return Bid(5, Denomination::kDiamonds); }

RkbHolding::RkbHolding(int keycards, bool has_trump_queen)
    : keycards(keycards), has_trump_queen(has_trump_queen) {
  if (keycards < 0 || keycards > 5) {
    throw std::invalid_argument("keycards must be 0-5, got " + std::to_string(keycards));
  }
}

RkbAnswer rkb_encode(const RkbHolding& holding) {
  switch (holding.keycards) {
    case 2:
    case 5:
      return Bid(5, holding.has_trump_queen ? Denomination::kSpades : Denomination::kHearts);
    default:
      break;
  }
  const int a0 = (holding.keycards == 0 || holding.keycards == 3) ? 0 : 1;
  const int a1 = holding.has_trump_queen ? 0 : 1;
  return ProtocolInputs{a0, a1};
}

Bid rkb_message_bid(int m) {
  check_bit(m, "message");
  return Bid(5, m == 0 ? Denomination::kClubs : Denomination::kDiamonds);
}

int rkb_bid_message(const Bid& bid) {
  if (bid == Bid(5, Denomination::kClubs)) return 0;
  if (bid == Bid(5, Denomination::kDiamonds)) return 1;
  throw NotAMessageBidError(bid.to_string() + " is not a keycard message bid (5C/5D)");
}

ProtocolInputs defense_encode(const DefenseHolding& holding) {
  return {holding.attitude == Attitude::kEncourage ? 0 : 1,
          holding.suit_count_parity == Parity::kOdd ? 0 : 1};
}

DefenseHolding defense_decode(const ProtocolInputs& inputs) {
  check_bit(inputs.a0, "a0");
  check_bit(inputs.a1, "a1");
  return {inputs.a0 == 0 ? Attitude::kEncourage : Attitude::kDiscourage,
          inputs.a1 == 0 ? Parity::kOdd : Parity::kEven};
}

SignalCard defense_message_card(int m) {
  check_bit(m, "message");
  return m == 0 ? SignalCard::kSmall : SignalCard::kHigh;
}

int defense_card_message(SignalCard card) { return card == SignalCard::kSmall ? 0 : 1; }

std::string describe(SignalCard card) {
  return card == SignalCard::kSmall ? "small card (2-5)" : "high card (6-10)";
}

ScenarioConfig ScenarioConfig::rkb_defaults() { return {ScenarioKind::kRkb, 0.5, 0.55, 0.75, 0.0}; }

ScenarioConfig ScenarioConfig::defense_defaults() {
  return {ScenarioKind::kDefense, 0.5, 0.5, 0.5, 0.0};
}

strategy::StrategyReport scenario_evaluate(const ScenarioConfig& config) {
  const double bypass = strategy::checked_probability(config.bypass_probability, "bypass");
  strategy::StrategyReport report = strategy::evaluate(
      strategy::expand_product({config.p0_prime, config.p1_prime, config.q}));
  if (config.kind != ScenarioKind::kRkb || bypass == 0.0) return report;

  auto mix = [bypass](double value) { return bypass + (1.0 - bypass) * value; };
  report.classical_value = mix(report.classical_value);
  report.quantum_value = mix(report.quantum_value);
  if (report.protocol_value) report.protocol_value = mix(*report.protocol_value);
  report.advantage = report.quantum_value - report.classical_value;
  return report;
}

}  // namespace qbridge::bridge
