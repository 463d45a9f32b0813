#include <gtest/gtest.h>

#include "steerkit/cli/config.hpp"

using namespace steerkit;
using namespace steerkit::cli;

TEST(Config, ParsesParamsAndRunBlock) {
  const ScenarioConfig c = parse_config_text(R"(
schema = 1
# weak damping, lossy second cavity
[params]
kappa2 = 0.4
g1 = 10
g2 = 20   # trailing comment
gamma_m = 0.01
[rwa]
omega_m = 1000
margin_factor = 20
[evolve]
t_max = 30
n_points = 11
initial = steady
)");
  EXPECT_EQ(c.params.kappa1, 1.0);
  EXPECT_EQ(c.params.kappa2, 0.4);
  EXPECT_EQ(c.params.g2, 20.0);
  EXPECT_EQ(c.params.omega_m, 1000.0);
  EXPECT_EQ(c.rwa_margin_factor, 20.0);
  ASSERT_TRUE(c.evolve);
  EXPECT_EQ(c.evolve->n_points, 11);
  EXPECT_EQ(c.evolve->initial, InitialState::steady);
  EXPECT_FALSE(c.spectra);
}

TEST(Config, ParsesSweep) {
  const ScenarioConfig c = parse_config_text(R"(
schema = 1
[params]
gamma_m = 5
[sweep]
objective = S21
free.g1 = 0.5, 20, 40
free.g2 = 0.5, 20, 40
swept.gamma_m = 1, 10, 10
equal_losses = true
)");
  ASSERT_TRUE(c.sweep);
  EXPECT_EQ(c.sweep->spec.objective, Objective::s21);
  ASSERT_EQ(c.sweep->spec.free_params.size(), 2u);
  EXPECT_EQ(c.sweep->spec.free_params[1].param, Param::g2);
  EXPECT_EQ(c.sweep->spec.free_params[1].steps, 40);
  ASSERT_TRUE(c.sweep->swept);
  EXPECT_EQ(c.sweep->swept->values.size(), 10u);
  EXPECT_EQ(c.sweep->swept->values.back(), 10.0);
  EXPECT_TRUE(c.sweep->spec.equal_losses);
}

TEST(Config, Rejections) {
  const char* bad[] = {
      "[params]\ng1 = 1\n",                          // missing schema
      "schema = 2\n",                                // unknown schema
      "schema = 1\n[params]\ng3 = 1\n",              // unknown key
      "schema = 1\n[params]\ng1 = -1\n",             // negative rate
      "schema = 1\n[params]\ng1 = 1\ng1 = 2\n",      // duplicate
      "schema = 1\n[params]\ng1 = abc\n",            // not a number
      "schema = 1\n[params]\ng1 = 1x\n",             // trailing junk
      "schema = 1\n[params]\nkappa1 = 0\n",          // kappa must be positive
      "schema = 1\n[foo]\n",                         // unknown section
      "schema = 1\n[evolve]\n[spectra]\n",           // two run blocks
      "schema = 1\n[evolve]\ninitial = hot\n",       // bad enum
      "schema = 1\n[evolve]\nn_points = 0\n",        // empty grid
      "schema = 1\n[spectra]\nomega_min = 1\n",      // half a range
      "schema = 1\n[sweep]\nobjective = S12\n",      // no free params
      "schema = 1\n[sweep]\nfree.g1 = 1, 2\n",       // bad range
      "schema = 1\n[rwa]\nmargin_factor = 1\n",      // margin must exceed 1
      "schema = 1\n[params\n",                       // malformed header
      "schema = 1\njust words\n",                    // no '='
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse_config_text(text), ConfigError) << text;
  }
}

TEST(Config, ErrorsNameTheLine) {
  try {
    parse_config_text("schema = 1\n[params]\n\ng9 = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(Config, MinimalConfigIsValid) {
  const ScenarioConfig c = parse_config_text("schema = 1\n");
  EXPECT_EQ(c.params.g1, 0.0);
  EXPECT_FALSE(c.evolve || c.spectra || c.sweep);
}
