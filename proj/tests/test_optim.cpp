/* Copyright 2026 The Firecast Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "firecast/adam.hpp"
#include "firecast/error.hpp"
#include "oracles.hpp"

namespace firecast {
namespace {

struct Scalar {
  Matrix theta;
  Matrix grad{1, 1};
  AdamState state;

  explicit Scalar(double t0) : theta(1, 1, {t0}) {
    const Matrix* p[] = {&theta};
    state = AdamState::for_params(p);
  }
  void step(double g, const AdamConfig& cfg = {}) {
    grad[0] = g;
    Matrix* p[] = {&theta};
    const Matrix* gr[] = {&grad};
    adam_step(state, cfg, p, gr);
  }
  double value() const { return theta[0]; }
};

TEST(AdamTest, DefaultsMatchAlgorithm) {
  const AdamConfig cfg;
  EXPECT_EQ(cfg.alpha, 0.001);
  EXPECT_EQ(cfg.beta1, 0.9);
  EXPECT_EQ(cfg.beta2, 0.999);
  EXPECT_EQ(cfg.epsilon, 1e-8);
}

TEST(AdamTest, FirstStepFromUnitGradient) {
  Scalar s(0.5);
  s.step(1.0);
  // m_hat = v_hat = 1, so the step is alpha / (1 + eps).
  EXPECT_NEAR(s.value(), 0.5 - 0.001 / (1.0 + 1e-8), 1e-12);
  EXPECT_NEAR(0.5 - s.value(), 0.000999999990, 1e-12);
  EXPECT_EQ(s.state.t, 1u);
  EXPECT_NEAR(s.state.m[0][0] / (1 - 0.9), 1.0, 1e-12);
  EXPECT_NEAR(s.state.v[0][0] / (1 - 0.999), 1.0, 1e-12);
}

TEST(AdamTest, ZeroGradientLeavesParamsButCountsStep) {
  Scalar s(3.0);
  s.step(0.0);
  s.step(0.0);
  EXPECT_EQ(s.value(), 3.0);
  EXPECT_EQ(s.state.t, 2u);
}

TEST(AdamTest, QuadraticTrajectoryMatchesScriptedOracle) {
  const auto expected = oracle::adam_trajectory(1.0, [](double th) { return 2.0 * th; }, 50);
  Scalar s(1.0);
  for (int t = 0; t < 50; ++t) {
    s.step(2.0 * s.value());
    EXPECT_NEAR(s.value(), expected[t], 1e-12) << "step " << t + 1;
  }
}

TEST(AdamTest, QuadraticTrajectoryFrozenValues) {
  // Independently computed with a Python transcription of the update rule.
  Scalar s(1.0);
  std::vector<double> got;
  for (int t = 0; t < 50; ++t) {
    s.step(2.0 * s.value());
    got.push_back(s.value());
  }
  EXPECT_NEAR(got[0], 0.999000000005, 1e-12);
  EXPECT_NEAR(got[1], 0.9980000262138343, 1e-12);
  EXPECT_NEAR(got[9], 0.9900032473478027, 1e-12);
  EXPECT_NEAR(got[49], 0.9503057019314531, 1e-12);
}

TEST(AdamTest, BiasCorrectedFirstMomentEqualsConstantGradient) {
  Scalar s(0.0);
  const double g = -0.37;
  for (int t = 1; t <= 200; ++t) {
    s.step(g);
    const double m_hat = s.state.m[0][0] / (1.0 - std::pow(0.9, t));
    EXPECT_NEAR(m_hat, g, 1e-12) << "t=" << t;
  }
}

TEST(AdamTest, StepMagnitudeBoundedByAlpha) {
  for (double g : {1e-6, 0.3, 1.0, 250.0, -4.0}) {
    Scalar s(0.0);
    s.step(g);
    for (int t = 2; t <= 100; ++t) {
      const double before = s.value();
      s.step(g);
      EXPECT_LE(std::abs(s.value() - before), 0.001 * 1.01) << "g=" << g << " t=" << t;
    }
  }
}

TEST(AdamTest, InvariantToGradientScale) {
  Scalar a(0.0), b(0.0);
  double da = 0.0, db = 0.0;
  for (int t = 1; t <= 100; ++t) {
    const double pa = a.value(), pb = b.value();
    a.step(0.8);
    b.step(0.8 * 37.0);
    da = a.value() - pa;
    db = b.value() - pb;
  }
  EXPECT_NEAR(db, da, 1e-6 * std::abs(da));
}

TEST(AdamTest, ShapeMisalignment) {
  Matrix p(2, 2), g(2, 3);
  const Matrix* pv[] = {&p};
  AdamState st = AdamState::for_params(pv);
  Matrix* pm[] = {&p};
  const Matrix* gv[] = {&g};
  EXPECT_THROW(adam_step(st, {}, pm, gv), ShapeError);
  const Matrix* none[] = {&g, &g};
  EXPECT_THROW(adam_step(st, {}, pm, none), ShapeError);
}

TEST(AdamTest, NonFiniteGradientIsAtomic) {
  Matrix p1(1, 2, {1.0, 2.0}), p2(1, 1, {3.0});
  Matrix g1(1, 2, {0.5, 0.5}), g2(1, 1, {std::numeric_limits<double>::quiet_NaN()});
  const Matrix* pv[] = {&p1, &p2};
  AdamState st = AdamState::for_params(pv);
  Matrix* pm[] = {&p1, &p2};
  const Matrix* gv[] = {&g1, &g2};
  try {
    adam_step(st, {}, pm, gv);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("tensor 1"), std::string::npos);
  }
  EXPECT_EQ(p1, (Matrix{{1.0, 2.0}}));
  EXPECT_EQ(st.t, 0u);
  EXPECT_EQ(st.m[0], Matrix(1, 2));
}

TEST(AdamTest, ConfigValidation) {
  EXPECT_THROW((AdamConfig{0.0, 0.9, 0.999, 1e-8}.validate()), ArgumentError);
  EXPECT_THROW((AdamConfig{0.001, 1.0, 0.999, 1e-8}.validate()), ArgumentError);
  EXPECT_THROW((AdamConfig{0.001, 0.9, -0.1, 1e-8}.validate()), ArgumentError);
  EXPECT_THROW((AdamConfig{0.001, 0.9, 0.999, 0.0}.validate()), ArgumentError);
  EXPECT_NO_THROW((AdamConfig{0.001, 0.0, 0.0, 1e-8}.validate()));
}

TEST(ClipTest, RescalesOnlyAboveThreshold) {
  Matrix a(1, 2, {3.0, 0.0}), b(1, 1, {4.0});
  Matrix* g[] = {&a, &b};
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 10.0), 5.0);
  EXPECT_EQ(a[0], 3.0);
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 1.0), 5.0);
  EXPECT_NEAR(a[0], 0.6, 1e-15);
  EXPECT_NEAR(b[0], 0.8, 1e-15);
}

}  // namespace
}  // namespace firecast
