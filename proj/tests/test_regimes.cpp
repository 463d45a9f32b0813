#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steerkit/regimes.hpp"
#include "steerkit/steady_state.hpp"
#include "steerkit/steering.hpp"

using namespace steerkit;

TEST(Regimes, Fig2aArithmetic) {
  SystemParams p;
  p.kappa2 = 0.4;
  p.g1 = 10;
  p.g2 = 20;
  p.gamma_m = 0.01;
  const RegimePredicates r = regime_predicates(p);
  EXPECT_DOUBLE_EQ(r.s12_oneway_weak.lhs, 36.0);
  EXPECT_NEAR(r.s12_oneway_weak.rhs, 0.784, 1e-12);
  EXPECT_TRUE(r.s12_oneway_weak.holds());
  EXPECT_EQ(r.s21_oneway_weak.status, PredicateStatus::fails);
  EXPECT_TRUE(r.entangled_weak.holds());
  EXPECT_EQ(r.s21_cond_strong.status, PredicateStatus::not_applicable);
  EXPECT_EQ(r.s12_cond_strong.status, PredicateStatus::not_applicable);
}

TEST(Regimes, WeakDampingPredicatesMatchNumerics) {
  int mismatches = 0, checked = 0;
  for (int k = 0; k < 1000; ++k) {
    SystemParams p;
    p.kappa2 = oracle::log_uniform(0.05, 20);
    p.g1 = oracle::log_uniform(0.1, 30);
    p.g2 = oracle::log_uniform(0.1, 30);
    p.gamma_m = 1e-4 * std::min(p.kappa1, p.kappa2);
    if (!assess_stability(p).stable()) continue;
    const RegimePredicates r = regime_predicates(p);
    const SteeringProducts s = steering_products_reduced(steady_state_lyapunov(p));
    // keep away from the boundary where gamma_m corrections decide
    const double margin12 = std::abs(r.s12_oneway_weak.lhs - r.s12_oneway_weak.rhs);
    const double margin21 = std::abs(r.s21_oneway_weak.lhs - r.s21_oneway_weak.rhs);
    if (margin12 < 1e-2 * r.s12_oneway_weak.rhs || margin21 < 1e-2 * r.s21_oneway_weak.rhs) continue;
    ++checked;
    if (r.s12_oneway_weak.holds() != (s.s12 < 1.0)) ++mismatches;
    if (r.s21_oneway_weak.holds() != (s.s21 < 1.0)) ++mismatches;
  }
  EXPECT_GT(checked, 300);
  EXPECT_EQ(mismatches, 0);
}

TEST(Regimes, WeakPredicatesAreMutuallyExclusive) {
  for (int k = 0; k < 500; ++k) {
    SystemParams p;
    p.kappa2 = oracle::log_uniform(0.01, 100);
    p.g1 = oracle::log_uniform(0.01, 100);
    p.g2 = oracle::log_uniform(0.01, 100);
    const RegimePredicates r = regime_predicates(p);
    EXPECT_FALSE(r.s12_oneway_weak.holds() && r.s21_oneway_weak.holds());
  }
}

TEST(Regimes, StrongDampingConditions) {
  SystemParams p;
  p.g1 = 6;
  p.g2 = 10;
  p.gamma_m = 6;
  const RegimePredicates r = regime_predicates(p);
  EXPECT_DOUBLE_EQ(r.omega, 8.0);
  // Omega^2/4 - 1 = 15, so gamma_m > 1/15 suffices
  EXPECT_NEAR(r.s21_cond_strong.rhs, 1.0 / 15.0, 1e-15);
  EXPECT_TRUE(r.s21_cond_strong.holds());
  EXPECT_NEAR(r.s12_cond_strong.rhs, (10.0 * std::sqrt(56.0) - 64.0) / 2.0, 1e-12);
  EXPECT_EQ(r.s12_cond_strong.status, PredicateStatus::fails);  // 6 > 5.42: S12 > 1

  p.gamma_m = 2;
  EXPECT_EQ(regime_predicates(p).s12_cond_strong.status, PredicateStatus::out_of_range);
}

TEST(Regimes, S21ConditionUnreachableForSmallOmega) {
  SystemParams p;
  p.g1 = 1;
  p.g2 = 1.5;  // Omega^2 = 1.25 < 4 kappa^2
  for (double gm : {0.1, 1.0, 10.0, 100.0}) {
    p.gamma_m = gm;
    const RegimePredicates r = regime_predicates(p);
    EXPECT_EQ(r.s21_cond_strong.status, PredicateStatus::fails);
    EXPECT_TRUE(std::isinf(r.s21_cond_strong.rhs));
    EXPECT_EQ(r.s12_cond_strong.status, PredicateStatus::not_applicable);
    EXPECT_GE(steering_products_reduced(steady_state_lyapunov(p)).s21, 1.0 - 1e-9);
  }
}

TEST(Regimes, StrongPredicatesNeedEqualLossesAndG2AboveG1) {
  SystemParams p;
  p.kappa2 = 1.5;
  p.g1 = 2;
  p.g2 = 5;
  p.gamma_m = 10;
  EXPECT_EQ(regime_predicates(p).s21_cond_strong.status, PredicateStatus::not_applicable);
  p.kappa2 = 1;
  p.g1 = p.g2 = 4;
  EXPECT_EQ(regime_predicates(p).s21_cond_strong.status, PredicateStatus::not_applicable);
  EXPECT_EQ(to_string(PredicateStatus::not_applicable), "NOT_APPLICABLE");
}
