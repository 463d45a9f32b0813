#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steerkit/steady_state.hpp"
#include "steerkit/steering.hpp"

using namespace steerkit;

namespace {

CorrelationMatrix wrap(const Eigen::Matrix4d& s) {
  CorrelationMatrix c;
  c.sigma = s;
  return c;
}

/// Reid products straight from the unscaled covariance, no rotation.
std::pair<double, double> reid(const Eigen::Matrix4d& sigma) {
  const Eigen::Matrix4d v = 2.0 * sigma;
  auto inferred = [&](int a, int b) { return v(a, a) - v(a, b) * v(a, b) / v(b, b); };
  return {inferred(0, 2) * inferred(1, 3), inferred(2, 0) * inferred(3, 1)};
}

}  // namespace

TEST(Steering, VacuumIsUnsteerableAndSeparable) {
  const SteeringResult r = evaluate_steering(wrap(0.5 * Eigen::Matrix4d::Identity()));
  EXPECT_NEAR(r.s12, 1.0, 1e-15);
  EXPECT_NEAR(r.s21, 1.0, 1e-15);
  EXPECT_EQ(r.e_n, 0.0);
  EXPECT_EQ(r.classification, Classification::no_steering);
}

TEST(Steering, TwoModeSqueezedVacuum) {
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    const SteeringResult res = evaluate_steering(wrap(oracle::tmsv(r)));
    EXPECT_NEAR(res.e_n, 2.0 * r, 1e-9);
    const double expected = 1.0 / std::pow(std::cosh(2.0 * r), 2);
    EXPECT_NEAR(res.s12, expected, 1e-9);
    EXPECT_NEAR(res.s21, expected, 1e-9);
    EXPECT_EQ(res.classification, Classification::two_way);
  }
}

TEST(Steering, ClassificationBoundaries) {
  EXPECT_EQ(classify(1.0, 1.0), Classification::no_steering);
  EXPECT_EQ(classify(0.999, 1.0), Classification::one_way_2_steers_1);
  EXPECT_EQ(classify(1.0, 0.999), Classification::one_way_1_steers_2);
  EXPECT_EQ(classify(0.5, 0.5), Classification::two_way);
  EXPECT_EQ(to_string(Classification::one_way_2_steers_1), "one-way-2-steers-1");
}

TEST(Steering, InvariantUnderPhaseOfModeTwo) {
  const Eigen::Matrix4d base = oracle::tmsv(0.6);
  for (double theta : {0.3, 1.1, 2.0, -2.7}) {
    Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
    rot.block<2, 2>(2, 2) << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const SteeringProducts s = steering_products(wrap(rot * base * rot.transpose()));
    EXPECT_NEAR(s.s12, 1.0 / std::pow(std::cosh(1.2), 2), 1e-12);
    EXPECT_NEAR(s.s21, 1.0 / std::pow(std::cosh(1.2), 2), 1e-12);
  }
}

TEST(Steering, ReducedFormulaMatchesFullMatrixAtSteadyState) {
  for (int k = 0; k < 200; ++k) {
    SystemParams p = oracle::random_stable(0.05, 20);
    p.n_th = oracle::uniform(0, 3);
    const MomentState m = steady_state_lyapunov(p);
    const SteeringProducts full = steering_products(to_correlation_matrix(m));
    const SteeringProducts reduced = steering_products_reduced(m);
    const auto [r12, r21] = reid(to_correlation_matrix(m).sigma);
    EXPECT_NEAR(full.s12, reduced.s12, 1e-8 * std::max(1.0, reduced.s12));
    EXPECT_NEAR(full.s21, reduced.s21, 1e-8 * std::max(1.0, reduced.s21));
    // steady c is real and negative, so no rotation is needed
    EXPECT_NEAR(full.s12, r12, 1e-8 * std::max(1.0, r12));
    EXPECT_NEAR(full.s21, r21, 1e-8 * std::max(1.0, r21));
  }
}

TEST(Steering, ReducedFormulaRejectsSqueezedModes) {
  Matrix6c phi = MomentState::vacuum_thermal(0.0).phi();
  phi(basis::a1, basis::a1) = 0.3;
  phi(basis::a1_dag, basis::a1_dag) = 0.3;
  EXPECT_THROW(steering_products_reduced(MomentState(phi)), DomainError);
}

TEST(Steering, SteeringImpliesEntanglement) {
  int steerable = 0, entangled_only = 0;
  for (int k = 0; k < 2000; ++k) {
    const CorrelationMatrix s = wrap(oracle::random_physical_sigma());
    ASSERT_GE(s.uncertainty_margin(), -1e-9);
    const SteeringResult r = evaluate_steering(s);
    if (r.s12 < 1.0 || r.s21 < 1.0) {
      ++steerable;
      EXPECT_GT(r.e_n, 0.0);
    }
    if (r.e_n > 0.0 && r.s12 >= 1.0 && r.s21 >= 1.0) ++entangled_only;
  }
  EXPECT_GT(steerable, 0);
  EXPECT_GT(entangled_only, 0);
}

TEST(Steering, NegativityOfThermalProductStateIsZero) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
  s.block<2, 2>(0, 0) *= 1.7;
  s.block<2, 2>(2, 2) *= 0.5;
  EXPECT_EQ(logarithmic_negativity(wrap(s)), 0.0);
}

TEST(Steering, RejectsUnphysicalMatrix) {
  Eigen::Matrix4d s = 0.5 * Eigen::Matrix4d::Identity();
  s(3, 3) = -0.5;
  EXPECT_THROW(logarithmic_negativity(wrap(s)), NumericError);
}
