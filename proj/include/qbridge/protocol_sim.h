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

#ifndef QBRIDGE_PROTOCOL_SIM_H_
#define QBRIDGE_PROTOCOL_SIM_H_

// Seeded Monte Carlo runs of the entanglement-assisted one-bit protocol.
//
// Random numbers: every shot k draws from its own SplitMix64 stream whose
// initial state is output k of the SplitMix64 sequence started at `seed`.
// A shot draws, in order, one uniform for the inputs, one for the
// measurement outcomes and one for the heralding count. Shots can therefore
// run on any number of threads and the tallies stay bit-identical.
//
// Heralding: both parties repeat detection attempts, each detecting
// independently with probability eta, until both detect in the same attempt.
// Only the settings (never the outcomes) depend on the inputs, so discarding
// failed attempts leaves the outcome statistics untouched.

#include <array>
#include <cstdint>

#include "qbridge/quantum_core.h"
#include "qbridge/strategy.h"

namespace qbridge::sim {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Stream for one shot; see the file comment.
  static SplitMix64 for_shot(std::uint64_t seed, std::uint64_t shot_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

struct InputBits {
  int a0 = 0;
  int a1 = 0;
  int b = 0;
};

struct RoundRecord {
  int a0, a1, b;
  int a;  // a0 xor a1, Alice's setting
  int A, B;
  int m;  // A xor a0, the transmitted bit
  int R;  // B xor m, Bob's guess of a_b
  bool success;
  std::uint64_t herald_attempts;
};

// Deterministic part of a round: the XOR encoding and decoding for given
// inputs and measurement outcomes.
RoundRecord decode_round(const InputBits& inputs, int alice_outcome, int bob_outcome,
                         std::uint64_t herald_attempts = 1);

// True when the record satisfies a = a0^a1, m = A^a0, R = B^m and
// success == (R == a_b).
bool is_consistent(const RoundRecord& record);

// Outcome distributions of the four (a, b) setting pairs on |Phi+>.
class OutcomeTable {
 public:
  explicit OutcomeTable(const strategy::MeasurementSettings& settings);

  const quantum::OutcomeDistribution& at(int a, int b) const { return table_[2 * a + b]; }

  // Inverse-CDF sample of (A, B) for setting pair (a, b) from u in [0, 1).
  std::pair<int, int> sample(int a, int b, double u) const;

 private:
  std::array<quantum::OutcomeDistribution, 4> table_;
};

// Attempts until both detectors fire, from u in [0, 1). Exactly 1 when
// efficiency is 1.
std::uint64_t herald_attempts(double efficiency, double u);

// One protocol round: draws (A, B) and the herald count from `rng`.
RoundRecord run_round(const InputBits& inputs, const strategy::MeasurementSettings& settings,
                      SplitMix64& rng, double efficiency = 1.0);

struct SimulationConfig {
  strategy::JointInputDistribution dist = strategy::JointInputDistribution::uniform();
  strategy::MeasurementSettings settings;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double efficiency = 1.0;  // per-party, per-attempt detection probability
  unsigned workers = 0;     // 0 picks std::thread::hardware_concurrency()
};

struct SimulationResult {
  std::uint64_t shots = 0;
  std::uint64_t successes = 0;
  double empirical_i = 0.0;
  double std_error = 0.0;
  double mean_herald_attempts = 0.0;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

// Throws std::invalid_argument when shots == 0 or efficiency is outside
// (0, 1].
SimulationResult run_trials(const SimulationConfig& config);

}  // namespace qbridge::sim

#endif  // QBRIDGE_PROTOCOL_SIM_H_
