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

#include "qbridge/protocol_sim.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qbridge::sim {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

InputBits sample_inputs(const strategy::JointInputDistribution& dist, double u) {
  const auto& probs = dist.probs();
  double cumulative = 0.0;
  int last_nonzero = 0;
  for (int i = 0; i < 8; ++i) {
    if (probs[i] <= 0.0) continue;
    last_nonzero = i;
    cumulative += probs[i];
    if (u < cumulative) return {(i >> 2) & 1, (i >> 1) & 1, i & 1};
  }
  // Rounding left u above the final cumulative sum.
  return {(last_nonzero >> 2) & 1, (last_nonzero >> 1) & 1, last_nonzero & 1};
}

struct Tally {
  std::uint64_t successes = 0;
  std::uint64_t attempts = 0;
};

// Every 4096th shot is re-checked against the XOR invariants.
constexpr std::uint64_t kAuditStride = 4096;

Tally run_range(const SimulationConfig& config, const OutcomeTable& table, std::uint64_t begin,
                std::uint64_t end) {
  Tally tally;
  for (std::uint64_t shot = begin; shot < end; ++shot) {
    SplitMix64 rng = SplitMix64::for_shot(config.seed, shot);
    const InputBits in = sample_inputs(config.dist, rng.uniform());
    const int a = in.a0 ^ in.a1;
    const auto [alice, bob] = table.sample(a, in.b, rng.uniform());
    const std::uint64_t attempts = herald_attempts(config.efficiency, rng.uniform());
    const int m = alice ^ in.a0;
    const int guess = bob ^ m;
    const int wanted = in.b == 0 ? in.a0 : in.a1;
    if (guess == wanted) ++tally.successes;
    tally.attempts += attempts;
    if (shot % kAuditStride == 0) {
      const RoundRecord record = decode_round(in, alice, bob, attempts);
      if (!is_consistent(record) || record.success != (guess == wanted)) {
        throw std::logic_error("protocol round violates the XOR invariants");
      }
    }
  }
  return tally;
}

}  // namespace

SplitMix64 SplitMix64::for_shot(std::uint64_t seed, std::uint64_t shot_index) {
  return SplitMix64(mix(seed + kGoldenGamma * (shot_index + 1)));
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGoldenGamma;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

RoundRecord decode_round(const InputBits& inputs, int alice_outcome, int bob_outcome,
                         std::uint64_t herald_attempts) {
  RoundRecord r;
  r.a0 = inputs.a0;
  r.a1 = inputs.a1;
  r.b = inputs.b;
  r.a = inputs.a0 ^ inputs.a1;
  r.A = alice_outcome;
  r.B = bob_outcome;
  r.m = r.A ^ r.a0;
  r.R = r.B ^ r.m;
  r.success = r.R == (r.b == 0 ? r.a0 : r.a1);
  r.herald_attempts = herald_attempts;
  return r;
}

bool is_consistent(const RoundRecord& r) {
  return r.a == (r.a0 ^ r.a1) && r.m == (r.A ^ r.a0) && r.R == (r.B ^ r.m) &&
         r.success == (r.R == (r.b == 0 ? r.a0 : r.a1)) && r.herald_attempts >= 1;
}

OutcomeTable::OutcomeTable(const strategy::MeasurementSettings& settings)
    : table_{quantum::joint_outcome_distribution(settings.alice(0), settings.bob(0),
                                                 quantum::bell_phi_plus()),
             quantum::joint_outcome_distribution(settings.alice(0), settings.bob(1),
                                                 quantum::bell_phi_plus()),
             quantum::joint_outcome_distribution(settings.alice(1), settings.bob(0),
                                                 quantum::bell_phi_plus()),
             quantum::joint_outcome_distribution(settings.alice(1), settings.bob(1),
                                                 quantum::bell_phi_plus())} {}

std::pair<int, int> OutcomeTable::sample(int a, int b, double u) const {
  const auto& probs = at(a, b).probs();
  double cumulative = 0.0;
  int last_nonzero = 0;
  for (int i = 0; i < 4; ++i) {
    if (probs[i] <= 0.0) continue;
    last_nonzero = i;
    cumulative += probs[i];
    if (u < cumulative) return {i >> 1, i & 1};
  }
  return {last_nonzero >> 1, last_nonzero & 1};
}

std::uint64_t herald_attempts(double efficiency, double u) {
  if (efficiency >= 1.0) return 1;
  // Geometric with success probability eta^2, by inversion.
  const double both = efficiency * efficiency;
  const double tail = 1.0 - u;  // (0, 1]
  return 1 + static_cast<std::uint64_t>(std::floor(std::log(tail) / std::log1p(-both)));
}

RoundRecord run_round(const InputBits& inputs, const strategy::MeasurementSettings& settings,
                      SplitMix64& rng, double efficiency) {
  const OutcomeTable table(settings);
  const auto [alice, bob] = table.sample(inputs.a0 ^ inputs.a1, inputs.b, rng.uniform());
  return decode_round(inputs, alice, bob, herald_attempts(efficiency, rng.uniform()));
}

SimulationResult run_trials(const SimulationConfig& config) {
  if (config.shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (!(config.efficiency > 0.0 && config.efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in (0, 1]");
  }
  const OutcomeTable table(config.settings);

  unsigned workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, config.shots));

  std::vector<Tally> tallies(workers);
  if (workers == 1) {
    tallies[0] = run_range(config, table, 0, config.shots);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = config.shots * w / workers;
      const std::uint64_t end = config.shots * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          tallies[w] = run_range(config, table, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Tally total;
  for (const Tally& t : tallies) {
    total.successes += t.successes;
    total.attempts += t.attempts;
  }
  SimulationResult result;
  result.shots = config.shots;
  result.successes = total.successes;
  const double n = static_cast<double>(config.shots);
  result.empirical_i = static_cast<double>(total.successes) / n;
  result.std_error = std::sqrt(result.empirical_i * (1.0 - result.empirical_i) / n);
  result.mean_herald_attempts = static_cast<double>(total.attempts) / n;
  return result;
}

}  // namespace qbridge::sim
