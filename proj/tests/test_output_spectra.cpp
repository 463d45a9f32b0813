#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steerkit/output_spectra.hpp"

using namespace steerkit;

namespace {

SystemParams fig4() {
  SystemParams p;
  p.g1 = 6;
  p.g2 = 10;
  p.gamma_m = 0.01;
  return p;
}

}  // namespace

TEST(Spectra, MatchesGenericTransferRoute) {
  for (int k = 0; k < 100; ++k) {
    SystemParams p = oracle::random_stable(0.05, 20);
    p.n_th = oracle::uniform(0, 5);
    for (double w : {0.0, 0.3, -1.7, 5.0}) {
      const SpectrumPoint s = spectrum_point(p, w);
      const oracle::Spectral o = oracle::spectral(p, w);
      const double scale = std::max(1.0, o.var_x1 + o.var_x2);
      EXPECT_NEAR(s.var_x1, o.var_x1, 1e-9 * scale);
      EXPECT_NEAR(s.var_x2, o.var_x2, 1e-9 * scale);
      EXPECT_NEAR(std::abs(s.cross - o.cross), 0.0, 1e-9 * scale);
      EXPECT_NEAR(s.s12, o.s12, 1e-7 * std::max(1.0, o.s12));
      EXPECT_NEAR(s.s21, o.s21, 1e-7 * std::max(1.0, o.s21));
      EXPECT_NEAR(s.n1_out, o.n1_out, 1e-9 * scale);
      EXPECT_NEAR(s.n2_out, o.n2_out, 1e-9 * scale);
    }
  }
}

TEST(Spectra, VacuumWithoutCoupling) {
  SystemParams p;
  p.kappa2 = 3;
  p.gamma_m = 0.5;
  for (double w : {0.0, 1.0, -4.0}) {
    const SpectrumPoint s = spectrum_point(p, w);
    EXPECT_NEAR(s.var_x1, 1.0, 1e-14);
    EXPECT_NEAR(s.var_x2, 1.0, 1e-14);
    EXPECT_NEAR(s.s12, 1.0, 1e-14);
    EXPECT_NEAR(s.s21, 1.0, 1e-14);
    EXPECT_EQ(std::abs(s.cross), 0.0);
  }
}

TEST(Spectra, OutputsSymmetricWithoutMechanicalDamping) {
  for (int k = 0; k < 50; ++k) {
    SystemParams p = oracle::random_stable(0.05, 20);
    p.gamma_m = 0.0;
    if (!assess_stability(p).stable()) continue;
    for (double w : default_omega_grid(p, 101)) {
      const SpectrumPoint s = spectrum_point(p, w);
      EXPECT_NEAR(s.n1_out, s.n2_out, 1e-10 * std::max(1.0, s.n1_out));
    }
  }
}

TEST(Spectra, UnstableRejected) {
  SystemParams p;
  p.g1 = 10;
  p.g2 = 1;
  p.gamma_m = 0.01;
  EXPECT_THROW(spectrum(p, default_omega_grid(p, 11)), NoSteadyState);
}

TEST(Spectra, GridIsSymmetricAndDeterministic) {
  const auto grid = default_omega_grid(fig4(), 2001);
  ASSERT_EQ(grid.size(), 2001u);
  EXPECT_DOUBLE_EQ(grid.front(), -40.0);
  EXPECT_DOUBLE_EQ(grid.back(), 40.0);
  EXPECT_EQ(grid[1000], 0.0);
  const auto a = spectrum(fig4(), grid);
  const auto b = spectrum(fig4(), grid);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].s12, b[k].s12);
}

TEST(Spectra, ResonancesAndWindows) {
  const auto res = resonance_frequencies(fig4());
  ASSERT_EQ(res.size(), 3u);
  EXPECT_NEAR(res[2], std::sqrt(63.0), 1e-14);
  const auto w = thermal_window(fig4());
  ASSERT_TRUE(w.has_value());
  EXPECT_DOUBLE_EQ(w->lower, 3600.0);
  EXPECT_DOUBLE_EQ(w->upper, 9999.0);
  EXPECT_TRUE(w->contains(5000));

  SystemParams p;
  p.g1 = 2;
  p.g2 = 3;
  p.gamma_m = 9;
  EXPECT_DOUBLE_EQ(spectral_oneway_threshold(p), 9.0);
  p.kappa2 = 2;
  EXPECT_THROW(spectral_oneway_threshold(p), DomainError);
  EXPECT_THROW(thermal_window(p), DomainError);
}

TEST(Spectra, SmallOmegaHasSingleResonance) {
  SystemParams p;
  p.g1 = 1;
  p.g2 = 1.2;
  p.gamma_m = 0.1;
  EXPECT_EQ(resonance_frequencies(p), std::vector<double>{0.0});
}
