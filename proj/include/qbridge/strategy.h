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

#ifndef QBRIDGE_STRATEGY_H_
#define QBRIDGE_STRATEGY_H_

// Classical and entanglement-assisted success probabilities for the biased
// 2->1 random access code.
//
// Alice holds bits (a0, a1), Bob wants a_b and receives a single bit m. The
// figure of merit is the average probability I that Bob's guess equals a_b
// under a joint input distribution p(a0, a1, b).
//
// The entanglement-assisted protocol: Alice measures observable
// A_{a0 xor a1}, Bob measures B_b on a shared |Phi+>, Alice sends
// m = A xor a0, Bob guesses R = B xor m. This is correct exactly when
// A xor B = (a0 xor a1) * b, so I is a biased CHSH expression in the XOR
// bias p = P(a0 xor a1 = 0) and q = P(b = 0).

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbridge/quantum_core.h"

namespace qbridge::strategy {

inline constexpr double kProbTolerance = 1e-12;

// Raised when a bias pair lies outside the set where the closed-form
// optimal measurements exist (|cos beta| > 1, or a degenerate bias).
class OutOfRegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Throws std::invalid_argument unless value is a finite number in [0, 1].
double checked_probability(double value, const char* what);

// p(a0, a1, b), stored at index 4*a0 + 2*a1 + b.
class JointInputDistribution {
 public:
  // Entries must lie in [0, 1] and sum to 1 within kProbTolerance.
  explicit JointInputDistribution(const std::array<double, 8>& probs);

  static JointInputDistribution uniform();
  static constexpr int index(int a0, int a1, int b) { return 4 * a0 + 2 * a1 + b; }

  double operator()(int a0, int a1, int b) const { return probs_[index(a0, a1, b)]; }
  const std::array<double, 8>& probs() const { return probs_; }

  double prob_b(int b) const;
  // P(a = a0 xor a1, b).
  double prob_xor_and_b(int a, int b) const;

 private:
  std::array<double, 8> probs_;
};

// Independent inputs: P(a0=0), P(a1=0), P(b=0).
struct ProductForm {
  double p0_prime = 0.5;
  double p1_prime = 0.5;
  double q = 0.5;
};

// p = P(a0 xor a1 = 0), q = P(b = 0).
struct BiasPair {
  double p = 0.5;
  double q = 0.5;
};

JointInputDistribution expand_product(const ProductForm& form);

BiasPair bias_pair(const JointInputDistribution& dist);

// p'^2 + (1 - p')^2: the XOR bias when both hand bits have P(0) = p'.
double xor_bias_symmetric(double p_prime);

// A product form with the given XOR bias whose two hand bits are equally
// skewed. For p >= 1/2 this is (p', p', q) with p'^2 + (1-p')^2 = p; for
// p < 1/2 it is (p', 1-p', q) with 2 p'(1-p') = p. p' >= 1/2 in both cases.
ProductForm matching_product_form(const BiasPair& bias);

// Encoder m(a0, a1) stored in bit (2*a0 + a1) of `encoder`; decoder R(b, m)
// stored in bit (2*b + m) of `decoder`.
struct DeterministicStrategy {
  std::uint8_t encoder = 0;
  std::uint8_t decoder = 0;

  int message(int a0, int a1) const { return (encoder >> (2 * a0 + a1)) & 1; }
  int guess(int b, int m) const { return (decoder >> (2 * b + m)) & 1; }

  // (encoder, decoder) read as one 8-bit integer; defines the order in which
  // tied optima are reported.
  int code() const { return (encoder << 4) | decoder; }

  // "m(00,01,10,11)=0011 R(b0m0,b0m1,b1m0,b1m1)=0101" style description.
  std::string describe() const;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

inline constexpr int kStrategyCount = 256;

// Success probability I of one deterministic strategy.
double strategy_value(const JointInputDistribution& dist, const DeterministicStrategy& s);

struct ClassicalOptimum {
  double value = 0.0;
  std::vector<DeterministicStrategy> optima;  // ascending by code()
  int candidates = 0;                         // always kStrategyCount
};

// Exhaustive search over all 16 x 16 encoder/decoder pairs. The search may be
// split across `workers` threads; the result does not depend on the split.
ClassicalOptimum classical_value_enumerated(const JointInputDistribution& dist,
                                            unsigned workers = 1);

// max{ q + (1-q) max(x1, 1-x1), (1-q) + q max(x0, 1-x0) } where
// x0 = P(a0=0 | b=0) and x1 = P(a1=0 | b=1). Assumes a0, a1 uncorrelated.
double classical_value_closed_form(double q, double pa0_given_b0, double pa1_given_b1);

struct ClosedFormInputs {
  double q;
  double pa0_given_b0;
  double pa1_given_b1;
};

// Conditionals feeding the closed form. A conditional on a zero-probability
// event falls back to the unconditional marginal.
ClosedFormInputs closed_form_inputs(const JointInputDistribution& dist);

struct BetaResult {
  double cos_beta;  // NaN when q or p is degenerate
  double beta;      // arccos(cos_beta); NaN unless in_region
  bool in_region;
};

BetaResult optimal_beta(const BiasPair& bias);

// Bloch angles of A_0, A_1 (Alice, setting a = 0, 1) and B_0, B_1 (Bob).
struct MeasurementSettings {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double beta = 0.0;

  quantum::XZObservable alice(int a) const {
    return quantum::XZObservable(a == 0 ? alpha0 : alpha1);
  }
  quantum::XZObservable bob(int b) const {
    return quantum::XZObservable(b == 0 ? gamma0 : gamma1);
  }

  // Every setting along one direction; all correlations are 1.
  static MeasurementSettings all_equal(double theta);
};

// Optimal biased-CHSH observables for the bias. Throws OutOfRegionError when
// optimal_beta is not in region.
MeasurementSettings optimal_settings(const BiasPair& bias);

// Success probability of the XOR protocol on |Phi+> with these settings.
double protocol_success(const JointInputDistribution& dist, const MeasurementSettings& settings);

// Q = sum_{a,b} p(a) q(b) (-1)^{ab} E(a, b) with independent a and b.
double biased_chsh_value(const BiasPair& bias, const MeasurementSettings& settings);

struct QuantumValue {
  double value;
  bool in_region;
};

// (1 + sqrt(2) sqrt(q^2+(1-q)^2) sqrt(p^2+(1-p)^2)) / 2 in region; outside
// it, the classical optimum of matching_product_form(bias).
QuantumValue quantum_value_closed_form(const BiasPair& bias);

// Half-wave-plate orientations, evaluated exactly as the optical setup
// prescribes them, plus how far the A plates deviate from the Bloch angles
// of optimal_settings. A residual is the angle between the two lines
// (directions modulo pi), so it is zero iff the tangents agree.
struct HwpAngles {
  double phi_a1;
  double phi_a2;
  double phi_b1;
  double phi_b2;
  double residual_a1;
  double residual_a2;
  double consistency_residual;  // max of the two
};

HwpAngles hwp_angles(const BiasPair& bias);

struct StrategyReport {
  double classical_value = 0.0;
  std::vector<DeterministicStrategy> classical_optima;
  // Best of the entanglement-assisted protocol and the classical optimum;
  // entangled players can always ignore their qubits.
  double quantum_value = 0.0;
  bool quantum_in_region = false;
  std::optional<MeasurementSettings> settings;
  // The XOR protocol at the optimal settings, when those exist.
  std::optional<double> protocol_value;
  double advantage = 0.0;
};

StrategyReport evaluate(const JointInputDistribution& dist);
// Evaluates matching_product_form(bias).
StrategyReport evaluate(const BiasPair& bias);

}  // namespace qbridge::strategy

#endif  // QBRIDGE_STRATEGY_H_
