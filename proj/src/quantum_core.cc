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

#include "qbridge/quantum_core.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qbridge::quantum {
namespace {

// Sum over i,j,k,l of conj(psi[ij]) a[i][k] b[j][l] psi[kl].
double contract(const Matrix2& a, const Matrix2& b, const TwoQubitState& psi) {
  Amplitude total = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Amplitude bra = std::conj(psi[2 * i + j]);
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          total += bra * a[i][k] * b[j][l] * psi[2 * k + l];
        }
      }
    }
  }
  // Hermitian operators give a real expectation; the imaginary part is
  // rounding noise.
  return total.real();
}

}  // namespace

TwoQubitState::TwoQubitState(const std::array<Amplitude, 4>& amplitudes)
    : amplitudes_(amplitudes) {
  for (const Amplitude& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("two-qubit state has a non-finite amplitude");
    }
  }
  const double n = norm_squared();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw std::invalid_argument("two-qubit state is not normalized (norm^2 = " +
                                std::to_string(n) + ")");
  }
}

double TwoQubitState::norm_squared() const {
  double n = 0.0;
  for (const Amplitude& a : amplitudes_) n += std::norm(a);
  return n;
}

TwoQubitState bell_phi_plus() {
  const double h = 1.0 / std::numbers::sqrt2;
  return TwoQubitState({Amplitude(h), Amplitude(0.0), Amplitude(0.0), Amplitude(h)});
}

double normalize_angle(double theta) {
  constexpr double kPi = std::numbers::pi;
  double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

XZObservable::XZObservable(double theta) : theta_(normalize_angle(theta)) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("observable angle must be finite");
  }
}

XZObservable XZObservable::sigma_z() { return XZObservable(std::numbers::pi / 2); }

Matrix2 XZObservable::matrix() const {
  // sigma_x = [[0,1],[1,0]], sigma_z = [[1,0],[0,-1]].
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {{{s, c}, {c, -s}}};
}

Matrix2 XZObservable::projector(int outcome_bit) const {
  const double sign = outcome_bit == 0 ? 1.0 : -1.0;
  const Matrix2 m = matrix();
  Matrix2 p{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      p[i][j] = 0.5 * ((i == j ? 1.0 : 0.0) + sign * m[i][j]);
    }
  }
  return p;
}

Correlation::Correlation(double value) {
  if (!(value >= -1.0 - kNormTolerance && value <= 1.0 + kNormTolerance)) {
    throw std::invalid_argument("correlation outside [-1, 1]: " + std::to_string(value));
  }
  value_ = std::clamp(value, -1.0, 1.0);
}

OutcomeDistribution::OutcomeDistribution(const std::array<double, 4>& probs) {
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= -kNormTolerance && probs[i] <= 1.0 + kNormTolerance)) {
      throw std::invalid_argument("outcome probability outside [0, 1]");
    }
    probs_[i] = std::clamp(probs[i], 0.0, 1.0);
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw std::invalid_argument("outcome distribution does not sum to 1");
  }
}

Correlation correlation(const XZObservable& alice, const XZObservable& bob,
                        const TwoQubitState& state) {
  return Correlation(contract(alice.matrix(), bob.matrix(), state));
}

OutcomeDistribution joint_outcome_distribution(const XZObservable& alice,
                                               const XZObservable& bob,
                                               const TwoQubitState& state) {
  std::array<double, 4> probs{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      probs[2 * a + b] = contract(alice.projector(a), bob.projector(b), state);
    }
  }
  return OutcomeDistribution(probs);
}

}  // namespace qbridge::quantum
