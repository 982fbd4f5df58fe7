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

#ifndef QBRIDGE_BRIDGE_H_
#define QBRIDGE_BRIDGE_H_

// Maps protocol bits to bridge objects for two situations:
//
//  * Roman Key-card Blackwood. After 4NT, East answers with one of 5C/5D
//    (the one-bit message) or, holding 2 or 5 keycards, with the usual
//    bypass answer 5H (no trump queen) / 5S (trump queen). a0 is the keycard
//    class (0: 0 or 3 keycards, 1: 1 or 4), a1 the trump queen (0: held).
//    West wants a0 when b = 0 and a1 when b = 1.
//
//  * Defensive signalling. a0 is attitude (0: encourage), a1 the parity of
//    the suit length (0: odd). The message is a small (2-5) or high (6-10)
//    spot card.

#include <compare>
#include <stdexcept>
#include <string>
#include <variant>

#include "qbridge/strategy.h"

namespace qbridge::bridge {

// Ordered for bid sufficiency.
enum class Denomination { kClubs = 0, kDiamonds, kHearts, kSpades, kNoTrump };

class Bid {
 public:
  // Throws std::invalid_argument unless 1 <= level <= 7.
  Bid(int level, Denomination denomination);

  int level() const { return level_; }
  Denomination denomination() const { return denomination_; }

  // "5C", "3NT", ...
  std::string to_string() const;
  // "5♣", "3NT", ...
  std::string to_symbol() const;

  // Higher level, or same level and higher denomination.
  bool is_sufficient_over(const Bid& previous) const { return previous < *this; }

  friend auto operator<=>(const Bid&, const Bid&) = default;

 private:
  int level_;
  Denomination denomination_;
};

// Parses "5C", "5c", "3NT", "5♣".
Bid parse_bid(const std::string& text);

// Highest bid the partnership can reach during the keycard exchange.
Bid safety_level();

class NotAMessageBidError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RkbHolding {
  RkbHolding(int keycards, bool has_trump_queen);

  int keycards;
  bool has_trump_queen;
};

struct ProtocolInputs {
  int a0;
  int a1;

  friend bool operator==(const ProtocolInputs&, const ProtocolInputs&) = default;
};

// Either protocol inputs, or a bypass answer when the keycard bit is
// undefined.
using RkbAnswer = std::variant<ProtocolInputs, Bid>;

RkbAnswer rkb_encode(const RkbHolding& holding);

// 0 -> 5C, 1 -> 5D.
Bid rkb_message_bid(int m);
// Throws NotAMessageBidError for anything but 5C / 5D.
int rkb_bid_message(const Bid& bid);

enum class Attitude { kEncourage, kDiscourage };
enum class Parity { kOdd, kEven };

struct DefenseHolding {
  Attitude attitude;
  Parity suit_count_parity;

  friend bool operator==(const DefenseHolding&, const DefenseHolding&) = default;
};

ProtocolInputs defense_encode(const DefenseHolding& holding);
DefenseHolding defense_decode(const ProtocolInputs& inputs);

enum class SignalCard { kSmall, kHigh };

SignalCard defense_message_card(int m);
int defense_card_message(SignalCard card);
// "small card (2-5)" / "high card (6-10)".
std::string describe(SignalCard card);

enum class ScenarioKind { kRkb, kDefense };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kRkb;
  double p0_prime = 0.5;
  double p1_prime = 0.55;
  double q = 0.75;
  // Fraction of deals on which East holds 2 or 5 keycards (rkb only).
  double bypass_probability = 0.0;

  static ScenarioConfig rkb_defaults();
  static ScenarioConfig defense_defaults();
};

// Classical and quantum values for the scenario's product-form inputs. For
// rkb, the bypass branch always succeeds and both values are mixed as
// bypass + (1 - bypass) * value.
strategy::StrategyReport scenario_evaluate(const ScenarioConfig& config);

}  // namespace qbridge::bridge

#endif  // QBRIDGE_BRIDGE_H_
