#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steerkit/steady_state.hpp"

using namespace steerkit;

namespace {

SystemParams fig2a() {
  SystemParams p;
  p.kappa2 = 0.4;
  p.g1 = 10;
  p.g2 = 20;
  p.gamma_m = 0.01;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Lyapunov, SolvesRandomStableEquation) {
  for (int k = 0; k < 50; ++k) {
    SystemParams p = oracle::random_stable();
    p.n_th = oracle::uniform(0, 5);
    const Matrix6c a = oracle::drift(p);
    const Matrix6c q = oracle::noise_source(p);
    const Matrix6c x = solve_lyapunov(a, q);
    const double res = (a * x + x * a.transpose() + q).norm();
    EXPECT_LT(res, 1e-9 * (2 * a.norm() * x.norm() + q.norm()));
  }
}

TEST(Lyapunov, ZeroSourceGivesZero) {
  const Matrix6c a = oracle::drift(fig2a());
  EXPECT_EQ(solve_lyapunov(a, Matrix6c::Zero()).norm(), 0.0);
}

TEST(SteadyState, Fig2aValues) {
  const MomentState m = steady_state_lyapunov(fig2a());
  EXPECT_NEAR(m.n1(), 1.00137, 1e-5);
  EXPECT_NEAR(m.n2(), 2.46407, 1e-5);
  EXPECT_NEAR(m.c().real(), -1.78253, 1e-5);
  EXPECT_NEAR(m.c().imag(), 0.0, 1e-12);
}

TEST(SteadyState, OperatorStructureHolds) {
  for (int k = 0; k < 100; ++k) {
    SystemParams p = oracle::random_stable(0.1, 10);
    p.n_th = oracle::uniform(0, 10);
    const MomentState m = steady_state_lyapunov(p);
    const double scale = std::max(1.0, m.phi().cwiseAbs().maxCoeff());
    EXPECT_LT(m.structure_defect(), 1e-9 * scale);
    // phase-insensitive pieces vanish in the steady state
    EXPECT_LT(std::abs(m.d1()), 1e-9 * scale);
    EXPECT_LT(std::abs(m.d2()), 1e-9 * scale);
    EXPECT_LT(std::abs(m.x12()), 1e-9 * scale);
    EXPECT_GE(to_correlation_matrix(m).uncertainty_margin(), -1e-9 * scale);
  }
}

TEST(SteadyState, UnstableThrowsWithReport) {
  SystemParams p;
  p.g1 = 10;
  p.g2 = 1;
  p.gamma_m = 0.01;
  try {
    steady_state_lyapunov(p);
    FAIL() << "expected NoSteadyState";
  } catch (const NoSteadyState& e) {
    EXPECT_FALSE(e.report().stable());
  }
  EXPECT_THROW(steady_state_closed_form(p), NoSteadyState);
}

TEST(SteadyState, DecoupledModesKeepVacuumAndThermalMechanics) {
  SystemParams p;
  p.gamma_m = 0.3;
  p.n_th = 2.5;
  const MomentState m = steady_state_lyapunov(p);
  EXPECT_NEAR(m.n1(), 0.0, 1e-14);
  EXPECT_NEAR(m.n2(), 0.0, 1e-14);
  EXPECT_NEAR(m.nm(), 2.5, 1e-12);
  EXPECT_EQ(std::abs(m.c()), 0.0);
}

TEST(ClosedForm, OccupationsMatchLyapunovAtAnyTemperature) {
  for (int k = 0; k < 300; ++k) {
    SystemParams p = oracle::random_stable();
    p.n_th = oracle::uniform(0, 20);
    const MomentState m = steady_state_lyapunov(p);
    const ClosedFormMoments cf = steady_state_closed_form(p);
    EXPECT_LT(rel(cf.n1, m.n1()), 1e-8);
    EXPECT_LT(rel(cf.n2, m.n2()), 1e-8);
    EXPECT_LT(rel(cf.c_corrected, m.c().real()), 1e-8);
    EXPECT_EQ(cf.c_status, ClosedFormStatus::unavailable_thermal);
    EXPECT_FALSE(cf.c.has_value());
  }
}

TEST(ClosedForm, PrintedCorrelationHoldsAtZeroTemperature) {
  for (int k = 0; k < 300; ++k) {
    const SystemParams p = oracle::random_stable();
    const ClosedFormMoments cf = steady_state_closed_form(p);
    ASSERT_TRUE(cf.c.has_value());
    EXPECT_EQ(cf.c_status, ClosedFormStatus::available);
    EXPECT_LT(rel(*cf.c, steady_state_lyapunov(p).c().real()), 1e-8);
    EXPECT_DOUBLE_EQ(*cf.c, cf.c_corrected);
  }
}

TEST(ClosedForm, EqualLossesUndampedGivesEqualOccupations) {
  for (int k = 0; k < 50; ++k) {
    SystemParams p;
    p.g2 = oracle::uniform(1, 20);
    p.g1 = p.g2 * oracle::uniform(0.05, 0.95);
    p.gamma_m = 0.0;
    const ClosedFormMoments cf = steady_state_closed_form(p);
    EXPECT_LT(rel(cf.n1, cf.n2), 1e-12);
  }
}
