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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qbridge::strategy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

// Oracle for the classical optimum that never materializes a decoder table:
// for each encoder, Bob's best reply to (b, m) is the likelier value of a_b
// given m, so I = sum over (b, m) of max_x P(a_b = x, m, b).
double best_reply_oracle(const JointInputDistribution& d) {
  double best = 0;
  for (int enc = 0; enc < 16; ++enc) {
    double value = 0;
    for (int b = 0; b < 2; ++b) {
      for (int m = 0; m < 2; ++m) {
        double mass[2] = {0, 0};
        for (int a0 = 0; a0 < 2; ++a0) {
          for (int a1 = 0; a1 < 2; ++a1) {
            if (((enc >> (2 * a0 + a1)) & 1) != m) continue;
            mass[b == 0 ? a0 : a1] += d(a0, a1, b);
          }
        }
        value += std::max(mass[0], mass[1]);
      }
    }
    best = std::max(best, value);
  }
  return best;
}

JointInputDistribution random_joint(std::mt19937_64& gen) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 8> w;
  double s = 0;
  for (double& x : w) s += (x = e(gen));
  for (double& x : w) x /= s;
  // Absorb rounding so the sum is exactly representable within tolerance.
  return JointInputDistribution(w);
}

JointInputDistribution correlated_equal_bits() {
  std::array<double, 8> w{};
  for (int b = 0; b < 2; ++b) {
    w[JointInputDistribution::index(0, 0, b)] = 0.25;
    w[JointInputDistribution::index(1, 1, b)] = 0.25;
  }
  return JointInputDistribution(w);
}

TEST(ExpandProduct, Examples) {
  for (double p : expand_product({0.5, 0.5, 0.5}).probs()) EXPECT_EQ(p, 0.125);
  EXPECT_NEAR(expand_product({0.5, 0.55, 0.75})(0, 0, 0), 0.20625, kTol);
  const auto certain = expand_product({1, 1, 1});
  EXPECT_EQ(certain(0, 0, 0), 1.0);
  for (int i = 1; i < 8; ++i) EXPECT_EQ(certain.probs()[i], 0.0);
}

TEST(ExpandProduct, RejectsOutOfRange) {
  EXPECT_THROW(expand_product({1.2, 0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(expand_product({0.5, -0.1, 0.5}), std::invalid_argument);
  EXPECT_THROW(expand_product({0.5, 0.5, NAN}), std::invalid_argument);
}

TEST(JointInputDistribution, RejectsBadTables) {
  EXPECT_THROW(JointInputDistribution({0.5, 0.5, 0.5, 0, 0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(JointInputDistribution({1.5, -0.5, 0, 0, 0, 0, 0, 0}), std::invalid_argument);
}

TEST(BiasPair, Examples) {
  const BiasPair rkb = bias_pair(expand_product({0.5, 0.55, 0.75}));
  EXPECT_NEAR(rkb.p, 0.5, kTol);
  EXPECT_NEAR(rkb.q, 0.75, kTol);
  const BiasPair u = bias_pair(JointInputDistribution::uniform());
  EXPECT_NEAR(u.p, 0.5, kTol);
  EXPECT_NEAR(u.q, 0.5, kTol);
  EXPECT_NEAR(bias_pair(expand_product({0.9, 0.9, 0.3})).p, 0.82, kTol);
  EXPECT_NEAR(xor_bias_symmetric(0.9), 0.82, kTol);
}

TEST(BiasPair, ProductFormFormula) {
  for (double p0 = 0; p0 <= 1.0; p0 += 0.125) {
    for (double p1 = 0; p1 <= 1.0; p1 += 0.125) {
      EXPECT_NEAR(bias_pair(expand_product({p0, p1, 0.3})).p,
                  p0 * p1 + (1 - p0) * (1 - p1), kTol);
    }
  }
}

TEST(MatchingProductForm, ReproducesBias) {
  for (double p = 0; p <= 1.0; p += 0.05) {
    const ProductForm f = matching_product_form({p, 0.4});
    EXPECT_GE(f.p0_prime, 0.5);
    EXPECT_NEAR(bias_pair(expand_product(f)).p, p, 1e-12);
  }
}

TEST(ClassicalClosedForm, Examples) {
  EXPECT_NEAR(classical_value_closed_form(0.75, 0.5, 0.55), 0.8875, kTol);
  EXPECT_NEAR(classical_value_closed_form(0.5, 0.5, 0.5), 0.75, kTol);
  EXPECT_EQ(classical_value_closed_form(1.0, 0.3, 0.9), 1.0);
  EXPECT_THROW(classical_value_closed_form(1.5, 0.5, 0.5), std::invalid_argument);
}

TEST(ClassicalEnumerated, HeadlineScenario) {
  const ClassicalOptimum opt = classical_value_enumerated(expand_product({0.5, 0.55, 0.75}));
  EXPECT_NEAR(opt.value, 0.8875, kTol);
  EXPECT_EQ(opt.candidates, 256);
  // m = a0; R(0, m) = m, R(1, m) = 0.
  const DeterministicStrategy send_a0{0b1100, 0b0010};
  EXPECT_NE(std::find(opt.optima.begin(), opt.optima.end(), send_a0), opt.optima.end());
  for (const auto& s : opt.optima) {
    EXPECT_NEAR(strategy_value(expand_product({0.5, 0.55, 0.75}), s), 0.8875, kTol);
  }
  EXPECT_TRUE(std::is_sorted(opt.optima.begin(), opt.optima.end(),
                             [](const auto& x, const auto& y) { return x.code() < y.code(); }));
}

TEST(ClassicalEnumerated, UniformAndCorrelated) {
  EXPECT_NEAR(classical_value_enumerated(JointInputDistribution::uniform()).value, 0.75, kTol);

  const JointInputDistribution corr = correlated_equal_bits();
  const ClassicalOptimum opt = classical_value_enumerated(corr);
  EXPECT_NEAR(opt.value, 1.0, kTol);
  const DeterministicStrategy copy_a0{0b1100, 0b1010};  // m = a0, R = m
  EXPECT_NE(std::find(opt.optima.begin(), opt.optima.end(), copy_a0), opt.optima.end());
  const ClosedFormInputs in = closed_form_inputs(corr);
  EXPECT_NEAR(classical_value_closed_form(in.q, in.pa0_given_b0, in.pa1_given_b1), 0.75, kTol);
}

TEST(ClassicalEnumerated, MatchesBestReplyOracle) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const JointInputDistribution d = random_joint(gen);
    EXPECT_NEAR(classical_value_enumerated(d).value, best_reply_oracle(d), kTol);
  }
}

TEST(ClassicalEnumerated, AgreesWithClosedFormOnProductGrid) {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      for (int k = 0; k <= 10; ++k) {
        const double p0 = i / 10.0, p1 = j / 10.0, q = k / 10.0;
        EXPECT_NEAR(classical_value_enumerated(expand_product({p0, p1, q})).value,
                    classical_value_closed_form(q, p0, p1), kTol)
            << p0 << ' ' << p1 << ' ' << q;
      }
    }
  }
}

TEST(ClassicalEnumerated, DominatesClosedFormOnCorrelatedInputs) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 500; ++trial) {
    const JointInputDistribution d = random_joint(gen);
    const ClosedFormInputs in = closed_form_inputs(d);
    EXPECT_GE(classical_value_enumerated(d).value,
              classical_value_closed_form(in.q, in.pa0_given_b0, in.pa1_given_b1) - kTol);
  }
}

TEST(ClassicalEnumerated, IndependentOfWorkerCount) {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 20; ++trial) {
    const JointInputDistribution d = random_joint(gen);
    const ClassicalOptimum serial = classical_value_enumerated(d, 1);
    for (unsigned workers : {2u, 3u, 7u, 256u, 1000u}) {
      const ClassicalOptimum split = classical_value_enumerated(d, workers);
      EXPECT_EQ(split.value, serial.value);
      EXPECT_EQ(split.optima, serial.optima);
    }
  }
}

TEST(OptimalBeta, Examples) {
  BetaResult b = optimal_beta({0.5, 0.75});
  EXPECT_TRUE(b.in_region);
  EXPECT_NEAR(b.cos_beta, 0.0, kTol);
  EXPECT_NEAR(b.beta, kPi / 2, kTol);

  b = optimal_beta({0.5, 0.5});
  EXPECT_TRUE(b.in_region);
  EXPECT_NEAR(b.beta, kPi / 2, kTol);

  b = optimal_beta({0.9, 0.9});
  EXPECT_FALSE(b.in_region);
  EXPECT_NEAR(b.cos_beta, 0.5 * (0.82 * 0.80) / (0.09 * 0.82), 1e-12);
  EXPECT_NEAR(b.cos_beta, 4.4444444, 1e-7);
}

TEST(OptimalBeta, DegenerateBiasIsOutOfRegion) {
  EXPECT_FALSE(optimal_beta({0.5, 0.0}).in_region);
  EXPECT_FALSE(optimal_beta({0.5, 1.0}).in_region);
  EXPECT_TRUE(std::isnan(optimal_beta({0.5, 1.0}).cos_beta));
  EXPECT_FALSE(optimal_beta({1.0, 0.5}).in_region);
  EXPECT_FALSE(optimal_beta({0.0, 0.5}).in_region);
}

TEST(OptimalSettings, Examples) {
  const MeasurementSettings chsh = optimal_settings({0.5, 0.5});
  EXPECT_NEAR(chsh.beta, kPi / 2, kTol);
  EXPECT_NEAR(chsh.alpha0, kPi / 4, kTol);
  EXPECT_NEAR(chsh.alpha1, -kPi / 4, kTol);
  EXPECT_EQ(chsh.gamma0, 0.0);
  EXPECT_NEAR(chsh.gamma1, kPi / 2, kTol);

  EXPECT_NEAR(optimal_settings({0.5, 0.75}).alpha0, 0.3217506, 1e-7);
  EXPECT_THROW(optimal_settings({0.9, 0.9}), OutOfRegionError);
}

TEST(OptimalSettings, ReproducesObservableComponentRatios) {
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const BiasPair bias{i / 20.0, j / 20.0};
      const BetaResult b = optimal_beta(bias);
      if (!b.in_region) continue;
      const MeasurementSettings s = optimal_settings(bias);
      const double q = bias.q;
      // Unnormalized (sigma_x, sigma_z) components of A1 and A2.
      const double a1x = q + (1 - q) * std::cos(b.beta), a1z = (1 - q) * std::sin(b.beta);
      const double a2x = q - (1 - q) * std::cos(b.beta), a2z = -(1 - q) * std::sin(b.beta);
      EXPECT_NEAR(std::cos(s.alpha0) * a1z - std::sin(s.alpha0) * a1x, 0.0, kTol);
      EXPECT_NEAR(std::cos(s.alpha1) * a2z - std::sin(s.alpha1) * a2x, 0.0, kTol);
      EXPECT_GT(std::cos(s.alpha0) * a1x + std::sin(s.alpha0) * a1z, 0.0);
      EXPECT_GT(std::cos(s.alpha1) * a2x + std::sin(s.alpha1) * a2z, 0.0);
    }
  }
}

TEST(ProtocolSuccess, Examples) {
  EXPECT_NEAR(protocol_success(expand_product({0.5, 0.55, 0.75}), optimal_settings({0.5, 0.75})),
              0.8953, 1e-4);
  EXPECT_NEAR(protocol_success(JointInputDistribution::uniform(), optimal_settings({0.5, 0.5})),
              (1 + 1 / std::numbers::sqrt2) / 2, kTol);
  // E = 1 everywhere: success iff a.b = 0, which is 3 of the 4 equally likely
  // (a, b) pairs.
  EXPECT_NEAR(protocol_success(JointInputDistribution::uniform(), MeasurementSettings::all_equal(0.3)),
              0.75, kTol);
}

TEST(BiasedChsh, Examples) {
  EXPECT_NEAR(biased_chsh_value({0.5, 0.5}, optimal_settings({0.5, 0.5})), 0.7071068, 1e-7);
  EXPECT_NEAR(biased_chsh_value({0.5, 0.75}, optimal_settings({0.5, 0.75})), std::sqrt(0.625),
              kTol);
  EXPECT_NEAR(biased_chsh_value({0.5, 0.5}, MeasurementSettings::all_equal(1.0)), 0.5, kTol);
}

TEST(QuantumClosedForm, Examples) {
  QuantumValue v = quantum_value_closed_form({0.5, 0.75});
  EXPECT_TRUE(v.in_region);
  EXPECT_NEAR(v.value, 0.8953, 5e-5);
  v = quantum_value_closed_form({0.5, 0.5});
  EXPECT_NEAR(v.value, 0.8535534, 1e-7);
  v = quantum_value_closed_form({1.0, 1.0});
  EXPECT_FALSE(v.in_region);
  EXPECT_EQ(v.value, 1.0);
}

TEST(QuantumClosedForm, ChainConsistencyOverInRegionGrid) {
  int checked = 0;
  for (int i = 1; i < 40; ++i) {
    for (int j = 1; j < 40; ++j) {
      const BiasPair bias{i / 40.0, j / 40.0};
      if (!optimal_beta(bias).in_region) continue;
      const MeasurementSettings s = optimal_settings(bias);
      const ProductForm form = matching_product_form(bias);
      const double i_protocol = protocol_success(expand_product(form), s);
      const QuantumValue closed = quantum_value_closed_form(bias);
      ASSERT_TRUE(closed.in_region);
      EXPECT_NEAR(i_protocol, closed.value, 1e-9);
      EXPECT_NEAR(i_protocol, 0.5 * (1 + biased_chsh_value(bias, s)), 1e-12);
      EXPECT_LE(closed.value, 1.0);
      ++checked;
    }
  }
  EXPECT_GE(checked, 400);
}

TEST(QuantumClosedForm, BeatsClassicalAtUnbiasedXor) {
  // With p = 1/2 the hand bits carry no skew to exploit classically.
  for (int k = 1; k < 100; ++k) {
    const double q = k / 100.0;
    const QuantumValue v = quantum_value_closed_form({0.5, q});
    ASSERT_TRUE(v.in_region);
    EXPECT_GE(v.value, classical_value_closed_form(q, 0.5, 0.5) - kTol);
  }
  EXPECT_GT(quantum_value_closed_form({0.5, 0.5}).value, 0.75 + 0.1);
}

TEST(QuantumClosedForm, XorProtocolCanTrailClassicalUnderSkewedHands) {
  // p' = (1 + sqrt(0.4))/2 gives p = 0.7. The XOR protocol sees only p, while
  // a classical strategy profits from each bit's own skew.
  const BiasPair bias{0.7, 0.5};
  const QuantumValue raw = quantum_value_closed_form(bias);
  ASSERT_TRUE(raw.in_region);
  const ProductForm f = matching_product_form(bias);
  const double classical = classical_value_closed_form(f.q, f.p0_prime, f.p1_prime);
  EXPECT_LT(raw.value, classical);

  const StrategyReport report = evaluate(bias);
  EXPECT_NEAR(report.classical_value, classical, kTol);
  EXPECT_NEAR(*report.protocol_value, raw.value, 1e-12);
  EXPECT_EQ(report.quantum_value, report.classical_value);
  EXPECT_EQ(report.advantage, 0.0);
}

TEST(QuantumClosedForm, FallbackOutsideRegion) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int outside = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const BiasPair bias{u(gen), u(gen)};
    const QuantumValue v = quantum_value_closed_form(bias);
    const ProductForm f = matching_product_form(bias);
    const double classical = classical_value_closed_form(f.q, f.p0_prime, f.p1_prime);
    if (!v.in_region) {
      ++outside;
      EXPECT_NEAR(v.value, classical, kTol);
    }
    EXPECT_GE(v.value, 0.0);
    EXPECT_LE(v.value, 1.0);
  }
  EXPECT_GT(outside, 0);
}

TEST(HwpAngles, Examples) {
  const HwpAngles h = hwp_angles({0.5, 0.75});
  EXPECT_NEAR(h.phi_a1, 0.3217506, 1e-7);
  EXPECT_NEAR(h.phi_b1, kPi / 4, 0.0);
  EXPECT_NEAR(h.phi_b2, 0.0, kTol);
  EXPECT_NEAR(h.residual_a1, 0.0, kTol);
  EXPECT_THROW(hwp_angles({0.9, 0.9}), OutOfRegionError);
}

TEST(HwpAngles, A1PlateAlwaysMatchesA2PlateDoesNot) {
  // The A1 plate reproduces A1's component ratio for every beta; the A2 plate
  // as written swaps sin and cos of beta and so departs from A2.
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const BiasPair bias{i / 20.0, j / 20.0};
      if (!optimal_beta(bias).in_region) continue;
      const HwpAngles h = hwp_angles(bias);
      EXPECT_NEAR(h.residual_a1, 0.0, 1e-12);
      EXPECT_EQ(h.phi_b1, kPi / 4);
      EXPECT_EQ(h.consistency_residual, std::max(h.residual_a1, h.residual_a2));
    }
  }
  // q = 0.75, beta = pi/2: A2 lies along atan(-1/3), the plate formula gives 0.
  const HwpAngles h = hwp_angles({0.5, 0.75});
  EXPECT_NEAR(h.phi_a2, 0.0, kTol);
  EXPECT_NEAR(h.residual_a2, std::atan(1.0 / 3.0), kTol);
}

TEST(Evaluate, ReportInvariants) {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 300; ++trial) {
    const JointInputDistribution d = random_joint(gen);
    const StrategyReport r = evaluate(d);
    EXPECT_EQ(r.advantage, r.quantum_value - r.classical_value);
    EXPECT_GE(r.quantum_value, r.classical_value - kTol);
    EXPECT_LE(r.quantum_value, 1.0);
    EXPECT_EQ(r.settings.has_value(), r.quantum_in_region);
    EXPECT_FALSE(r.classical_optima.empty());
  }
  const StrategyReport headline = evaluate(expand_product({0.5, 0.55, 0.75}));
  EXPECT_NEAR(headline.classical_value, 0.8875, kTol);
  EXPECT_NEAR(headline.quantum_value, 0.8952847, 1e-7);
  EXPECT_TRUE(headline.quantum_in_region);
}

TEST(DeterministicStrategy, Describe) {
  EXPECT_EQ((DeterministicStrategy{0b1100, 0b0010}).describe(),
            "m(00,01,10,11)=0011 R(b0m0,b0m1,b1m0,b1m1)=0100");
  EXPECT_EQ((DeterministicStrategy{0b1100, 0b0010}).code(), 0xC2);
}

}  // namespace
}  // namespace qbridge::strategy
