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

#include "qbridge/strategy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace qbridge::strategy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double weight(double prob_zero, int bit) { return bit == 0 ? prob_zero : 1.0 - prob_zero; }

// Smallest angle between two undirected lines through the origin.
double line_distance(double phi, double theta) {
  return std::abs(std::remainder(phi - theta, kPi));
}

bool is_degenerate(double prob) { return prob <= 0.0 || prob >= 1.0; }

}  // namespace

double checked_probability(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw std::invalid_argument(std::string(what) + " must be a probability in [0, 1], got " +
                                std::to_string(value));
  }
  return value;
}

JointInputDistribution::JointInputDistribution(const std::array<double, 8>& probs) {
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] < 0.0 || probs[i] > 1.0) {
      throw std::invalid_argument("joint input probability " + std::to_string(i) +
                                  " outside [0, 1]");
    }
    probs_[i] = probs[i];
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    throw std::invalid_argument("joint input distribution sums to " + std::to_string(sum) +
                                ", not 1");
  }
}

JointInputDistribution JointInputDistribution::uniform() {
  std::array<double, 8> probs;
  probs.fill(0.125);
  return JointInputDistribution(probs);
}

double JointInputDistribution::prob_b(int b) const {
  double total = 0.0;
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 2; ++a1) total += (*this)(a0, a1, b);
  }
  return total;
}

double JointInputDistribution::prob_xor_and_b(int a, int b) const {
  return (*this)(0, a, b) + (*this)(1, 1 - a, b);
}

JointInputDistribution expand_product(const ProductForm& form) {
  const double p0 = checked_probability(form.p0_prime, "p0'");
  const double p1 = checked_probability(form.p1_prime, "p1'");
  const double q = checked_probability(form.q, "q");
  std::array<double, 8> probs{};
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int b = 0; b < 2; ++b) {
        probs[JointInputDistribution::index(a0, a1, b)] =
            weight(p0, a0) * weight(p1, a1) * weight(q, b);
      }
    }
  }
  return JointInputDistribution(probs);
}

BiasPair bias_pair(const JointInputDistribution& dist) {
  const double p = dist.prob_xor_and_b(0, 0) + dist.prob_xor_and_b(0, 1);
  return {std::clamp(p, 0.0, 1.0), std::clamp(dist.prob_b(0), 0.0, 1.0)};
}

double xor_bias_symmetric(double p_prime) {
  checked_probability(p_prime, "p'");
  return p_prime * p_prime + (1.0 - p_prime) * (1.0 - p_prime);
}

ProductForm matching_product_form(const BiasPair& bias) {
  const double p = checked_probability(bias.p, "p");
  const double q = checked_probability(bias.q, "q");
  const double skew = std::sqrt(std::abs(2.0 * p - 1.0));
  const double p_prime = 0.5 * (1.0 + skew);
  if (p >= 0.5) return {p_prime, p_prime, q};
  return {p_prime, 1.0 - p_prime, q};
}

std::string DeterministicStrategy::describe() const {
  std::string out = "m(00,01,10,11)=";
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 2; ++a1) out += static_cast<char>('0' + message(a0, a1));
  }
  out += " R(b0m0,b0m1,b1m0,b1m1)=";
  for (int b = 0; b < 2; ++b) {
    for (int m = 0; m < 2; ++m) out += static_cast<char>('0' + guess(b, m));
  }
  return out;
}

double strategy_value(const JointInputDistribution& dist, const DeterministicStrategy& s) {
  double value = 0.0;
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 2; ++a1) {
      const int m = s.message(a0, a1);
      for (int b = 0; b < 2; ++b) {
        const int wanted = b == 0 ? a0 : a1;
        if (s.guess(b, m) == wanted) value += dist(a0, a1, b);
      }
    }
  }
  return value;
}

ClassicalOptimum classical_value_enumerated(const JointInputDistribution& dist,
                                            unsigned workers) {
  std::array<double, kStrategyCount> values{};
  auto fill = [&](int begin, int end) {
    for (int code = begin; code < end; ++code) {
      const DeterministicStrategy s{static_cast<std::uint8_t>(code >> 4),
                                    static_cast<std::uint8_t>(code & 0xF)};
      values[code] = strategy_value(dist, s);
    }
  };

  workers = std::clamp(workers, 1u, static_cast<unsigned>(kStrategyCount));
  if (workers == 1) {
    fill(0, kStrategyCount);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(w * kStrategyCount / workers);
      const int end = static_cast<int>((w + 1) * kStrategyCount / workers);
      pool.emplace_back(fill, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  ClassicalOptimum result;
  result.candidates = kStrategyCount;
  result.value = *std::max_element(values.begin(), values.end());
  for (int code = 0; code < kStrategyCount; ++code) {
    if (values[code] >= result.value - kProbTolerance) {
      result.optima.push_back({static_cast<std::uint8_t>(code >> 4),
                               static_cast<std::uint8_t>(code & 0xF)});
    }
  }
  return result;
}

double classical_value_closed_form(double q, double pa0_given_b0, double pa1_given_b1) {
  checked_probability(q, "q");
  checked_probability(pa0_given_b0, "P(a0=0|b=0)");
  checked_probability(pa1_given_b1, "P(a1=0|b=1)");
  const double send_a0 = q + (1.0 - q) * std::max(pa1_given_b1, 1.0 - pa1_given_b1);
  const double send_a1 = (1.0 - q) + q * std::max(pa0_given_b0, 1.0 - pa0_given_b0);
  return std::max(send_a0, send_a1);
}

ClosedFormInputs closed_form_inputs(const JointInputDistribution& dist) {
  const double q = dist.prob_b(0);
  const double a0_zero = dist(0, 0, 0) + dist(0, 0, 1) + dist(0, 1, 0) + dist(0, 1, 1);
  const double a1_zero = dist(0, 0, 0) + dist(0, 0, 1) + dist(1, 0, 0) + dist(1, 0, 1);
  const double b0 = dist.prob_b(0);
  const double b1 = dist.prob_b(1);
  const double x0 = b0 > 0.0 ? (dist(0, 0, 0) + dist(0, 1, 0)) / b0 : a0_zero;
  const double x1 = b1 > 0.0 ? (dist(0, 0, 1) + dist(1, 0, 1)) / b1 : a1_zero;
  return {std::clamp(q, 0.0, 1.0), std::clamp(x0, 0.0, 1.0), std::clamp(x1, 0.0, 1.0)};
}

BetaResult optimal_beta(const BiasPair& bias) {
  const double p = checked_probability(bias.p, "p");
  const double q = checked_probability(bias.q, "q");
  if (is_degenerate(q)) return {kNaN, kNaN, false};

  const double q_norm = q * q + (1.0 - q) * (1.0 - q);
  const double p_norm = p * p + (1.0 - p) * (1.0 - p);
  const double p_skew = p * p - (1.0 - p) * (1.0 - p);
  const double cos_beta = 0.5 * q_norm * p_skew / (q * (1.0 - q) * p_norm);
  if (is_degenerate(p) || std::abs(cos_beta) > 1.0) return {cos_beta, kNaN, false};
  return {cos_beta, std::acos(cos_beta), true};
}

MeasurementSettings MeasurementSettings::all_equal(double theta) {
  return {theta, theta, theta, theta, 0.0};
}

MeasurementSettings optimal_settings(const BiasPair& bias) {
  const BetaResult b = optimal_beta(bias);
  if (!b.in_region) {
    throw OutOfRegionError("no optimal settings: cos(beta) = " + std::to_string(b.cos_beta) +
                           " for p = " + std::to_string(bias.p) +
                           ", q = " + std::to_string(bias.q));
  }
  const double q = bias.q;
  const double sin_b = std::sin(b.beta);
  const double cos_b = std::cos(b.beta);
  MeasurementSettings s;
  s.beta = b.beta;
  s.alpha0 = std::atan2((1.0 - q) * sin_b, q + (1.0 - q) * cos_b);
  s.alpha1 = std::atan2(-(1.0 - q) * sin_b, q - (1.0 - q) * cos_b);
  s.gamma0 = 0.0;
  s.gamma1 = b.beta;
  return s;
}

double protocol_success(const JointInputDistribution& dist, const MeasurementSettings& settings) {
  const quantum::TwoQubitState psi = quantum::bell_phi_plus();
  double total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double e = quantum::correlation(settings.alice(a), settings.bob(b), psi).value();
      const double sign = (a & b) ? -1.0 : 1.0;
      total += dist.prob_xor_and_b(a, b) * 0.5 * (1.0 + sign * e);
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

double biased_chsh_value(const BiasPair& bias, const MeasurementSettings& settings) {
  const double p = checked_probability(bias.p, "p");
  const double q = checked_probability(bias.q, "q");
  const quantum::TwoQubitState psi = quantum::bell_phi_plus();
  double total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double e = quantum::correlation(settings.alice(a), settings.bob(b), psi).value();
      const double sign = (a & b) ? -1.0 : 1.0;
      total += weight(p, a) * weight(q, b) * sign * e;
    }
  }
  return total;
}

QuantumValue quantum_value_closed_form(const BiasPair& bias) {
  if (!optimal_beta(bias).in_region) {
    const ProductForm form = matching_product_form(bias);
    return {classical_value_closed_form(form.q, form.p0_prime, form.p1_prime), false};
  }
  const double p = bias.p;
  const double q = bias.q;
  const double chsh = std::numbers::sqrt2 * std::sqrt(q * q + (1.0 - q) * (1.0 - q)) *
                      std::sqrt(p * p + (1.0 - p) * (1.0 - p));
  return {0.5 * (1.0 + chsh), true};
}

HwpAngles hwp_angles(const BiasPair& bias) {
  const MeasurementSettings s = optimal_settings(bias);
  const double q = bias.q;
  const double u = kPi / 2 - s.beta;

  HwpAngles h;
  h.phi_a1 = std::atan2((1.0 - q) * std::cos(u), q + (1.0 - q) * std::sin(u));
  h.phi_a2 = std::atan2(-(1.0 - q) * std::sin(u), q - (1.0 - q) * std::cos(u));
  h.phi_b1 = kPi / 4;
  h.phi_b2 = u;
  h.residual_a1 = line_distance(h.phi_a1, s.alpha0);
  h.residual_a2 = line_distance(h.phi_a2, s.alpha1);
  h.consistency_residual = std::max(h.residual_a1, h.residual_a2);
  return h;
}

StrategyReport evaluate(const JointInputDistribution& dist) {
  StrategyReport report;
  ClassicalOptimum classical = classical_value_enumerated(dist);
  report.classical_value = classical.value;
  report.classical_optima = std::move(classical.optima);
  report.quantum_value = report.classical_value;

  const BiasPair bias = bias_pair(dist);
  report.quantum_in_region = optimal_beta(bias).in_region;
  if (report.quantum_in_region) {
    report.settings = optimal_settings(bias);
    report.protocol_value = protocol_success(dist, *report.settings);
    report.quantum_value = std::max(*report.protocol_value, report.classical_value);
  }
  report.advantage = report.quantum_value - report.classical_value;
  return report;
}

StrategyReport evaluate(const BiasPair& bias) {
  return evaluate(expand_product(matching_product_form(bias)));
}

}  // namespace qbridge::strategy
