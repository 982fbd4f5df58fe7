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

#ifndef QBRIDGE_QUANTUM_CORE_H_
#define QBRIDGE_QUANTUM_CORE_H_

// Exact two-qubit quantum mechanics restricted to what the bidding protocol
// needs: one pure state of two qubits, and dichotomic observables whose Bloch
// vectors lie in the x-z plane.
//
// Outcome bits follow a fixed convention: eigenvalue +1 is bit 0 and
// eigenvalue -1 is bit 1. With it, E = P(A=B) - P(A!=B).

#include <array>
#include <complex>

namespace qbridge::quantum {

inline constexpr double kNormTolerance = 1e-12;

using Amplitude = std::complex<double>;
using Matrix2 = std::array<std::array<double, 2>, 2>;

// Pure state over the basis |00>, |01>, |10>, |11> (index 2*i + j for |ij>).
class TwoQubitState {
 public:
  // Throws std::invalid_argument if an amplitude is not finite or the state
  // is not normalized within kNormTolerance.
  explicit TwoQubitState(const std::array<Amplitude, 4>& amplitudes);

  const std::array<Amplitude, 4>& amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](int index) const { return amplitudes_[index]; }
  double norm_squared() const;

 private:
  std::array<Amplitude, 4> amplitudes_;
};

// (|00> + |11>) / sqrt(2).
TwoQubitState bell_phi_plus();

// cos(theta) sigma_x + sin(theta) sigma_z. theta is measured from the sigma_x
// axis toward the sigma_z axis and stored normalized to (-pi, pi].
class XZObservable {
 public:
  explicit XZObservable(double theta);

  double theta() const { return theta_; }

  // Real symmetric matrix in the computational basis.
  Matrix2 matrix() const;

  // Eigenprojector for outcome bit 0 (eigenvalue +1) or 1 (eigenvalue -1).
  Matrix2 projector(int outcome_bit) const;

  static XZObservable sigma_x() { return XZObservable(0.0); }
  static XZObservable sigma_z();

 private:
  double theta_;
};

// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

// Expectation value of a +-1 valued product observable, within [-1, 1].
class Correlation {
 public:
  explicit Correlation(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// probs indexed by 2*A + B.
class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(const std::array<double, 4>& probs);

  double operator()(int alice_bit, int bob_bit) const {
    return probs_[2 * alice_bit + bob_bit];
  }
  const std::array<double, 4>& probs() const { return probs_; }

  double prob_equal() const { return probs_[0] + probs_[3]; }
  double prob_alice(int bit) const { return probs_[2 * bit] + probs_[2 * bit + 1]; }
  double prob_bob(int bit) const { return probs_[bit] + probs_[2 + bit]; }

 private:
  std::array<double, 4> probs_;
};

// <state| A (x) B |state>, by explicit contraction over the 4x4 tensor
// product.
Correlation correlation(const XZObservable& alice, const XZObservable& bob,
                        const TwoQubitState& state);

// P(A, B) = <state| P_A (x) P_B |state>.
OutcomeDistribution joint_outcome_distribution(const XZObservable& alice,
                                               const XZObservable& bob,
                                               const TwoQubitState& state);

}  // namespace qbridge::quantum

#endif  // QBRIDGE_QUANTUM_CORE_H_
