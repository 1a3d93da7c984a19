#include <gtest/gtest.h>

#include "rnls/config.hpp"

using namespace rnls;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

} // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("# nothing set\n\n");
  EXPECT_EQ(c.half_width, 16.0);
  EXPECT_EQ(c.grid_points, 128);
  EXPECT_EQ(c.band_radius, 2);
  EXPECT_EQ(c.data.family, DataFamily::kGaussian);
  EXPECT_EQ(c.data.modes, std::vector<int>{0});
  EXPECT_EQ(c.stepper.dt, 1e-3);
  EXPECT_EQ(c.stepper.horizon, 1.0);
  EXPECT_TRUE(c.stepper.dealias);
  EXPECT_EQ(c.stepper.snapshot_stride, 10);
  EXPECT_FALSE(c.diagnostics.morawetz_cutoff.has_value());
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.output_dir, "out");
  EXPECT_TRUE(validate(c).empty());
}

TEST(Config, ParsesEveryKind) {
  const RunConfig c = parse_config(
      "grid.L = 20   # comment\n"
      "grid.N = 64\n"
      "band.J = 3\n"
      "data.family = random_gaussians\n"
      "data.center = 1.5, -2\n"
      "data.modes = -3, 0, 3\n"
      "stepper.dealias = false\n"
      "stepper.T = 0.5\n"
      "diagnostics.morawetz_cutoff = 2\n"
      "bilinear.p = inf\n"
      "bilinear.q = 1\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(c.half_width, 20.0);
  EXPECT_EQ(c.grid_points, 64);
  EXPECT_EQ(c.data.family, DataFamily::kRandomGaussians);
  EXPECT_EQ(c.data.center, Vector2(1.5, -2.0));
  EXPECT_EQ(c.data.modes, (std::vector<int>{-3, 0, 3}));
  EXPECT_FALSE(c.stepper.dealias);
  EXPECT_EQ(*c.diagnostics.morawetz_cutoff, 2);
  EXPECT_TRUE(std::isinf(c.bilinear.p));
  EXPECT_EQ(c.seed, 18446744073709551615ull);
}

TEST(Config, AllModes) {
  const RunConfig c = parse_config("band.J = 2\ndata.modes = all\n");
  EXPECT_EQ(c.data_modes(), (std::vector<int>{-2, -1, 0, 1, 2}));
}

TEST(Config, EchoRoundTrips) {
  const RunConfig c = parse_config("grid.L = 20\nband.J = 3\ndata.modes = 1, -1\nstepper.dt = 0.0025\n");
  const std::string text = echo(c);
  EXPECT_EQ(echo(parse_config(text)), text);
  EXPECT_NE(text.find("stepper.dt = 0.0025\n"), std::string::npos);
}

TEST(Config, GridSizeMustBePowerOfTwo) {
  const auto v = violations_of("grid.N = 100\n");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(mentions(v, "line 1"));
  EXPECT_TRUE(mentions(v, "power of two"));
}

TEST(Config, ModeOutsideBandNamesBothKeys) {
  const auto v = violations_of("band.J = 4\ndata.modes = 6\n");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(mentions(v, "band.J"));
  EXPECT_TRUE(mentions(v, "data.modes"));
  EXPECT_TRUE(mentions(v, "line 1"));
  EXPECT_TRUE(mentions(v, "line 2"));
}

TEST(Config, ReportsEveryViolation) {
  const auto v = violations_of(
      "grid.N = 100\n"
      "bogus.key = 1\n"
      "stepper.dt = fast\n"
      "stepper.dealias = yes\n"
      "no equals sign\n"
      "band.J = 1\n"
      "band.J = 2\n");
  EXPECT_EQ(v.size(), 6u);
  EXPECT_TRUE(mentions(v, "line 2: unknown key 'bogus.key'"));
  EXPECT_TRUE(mentions(v, "line 3: stepper.dt"));
  EXPECT_TRUE(mentions(v, "line 4: stepper.dealias"));
  EXPECT_TRUE(mentions(v, "line 5"));
  EXPECT_TRUE(mentions(v, "line 7: duplicate key"));
}

TEST(Config, ResolutionHeuristic) {
  // Gaussian of width 1 at the origin: 4 + 2 * 4 * T.
  RunConfig c = parse_config("stepper.T = 1\n");
  EXPECT_DOUBLE_EQ(required_half_width(c), 12.0);
  const auto v = violations_of("grid.L = 10\nstepper.T = 1\n");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(mentions(v, "grid.L"));
  EXPECT_TRUE(violations_of("data.family = zero\ngrid.L = 1\nstepper.T = 100\n").empty());
}

TEST(Config, MissingFileIsReported) {
  EXPECT_THROW(load_config("/nonexistent/run.cfg"), ConfigError);
}
