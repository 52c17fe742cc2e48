#include <doctest.h>

#include <cmath>
#include <random>

#include "xpsram/bitcell.hpp"
#include "xpsram/latch.hpp"

using namespace xpsram;

TEST_CASE("node_step settles on the divider fixed point") {
  // V* = VDD * g_up / (g_up + g_down); with 1 mS vs 1 uS that is 0.999001 VDD.
  double v = 0.0;
  for (int i = 0; i < 20000; ++i) v = node_step(v, 1e-3, 1e-6, 0.1, 1.0, 1.0);
  CHECK(v == doctest::Approx(1e-3 / (1e-3 + 1e-6)).epsilon(1e-9));
  CHECK(v == doctest::Approx(0.999001).epsilon(1e-6));

  v = 0.8;
  for (int i = 0; i < 20000; ++i) v = node_step(v, 5e-6, 5e-6, 1.0, 1.0, 1.0);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-9));

  // Floating node holds its value.
  CHECK(node_step(0.37, 0.0, 0.0, 1.0, 1.0, 1.0) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("node_step clamps to the rails and validates dt") {
  CHECK(node_step(0.99, 1.0, 0.0, 10.0, 1.0, 1.0) <= 1.0);
  CHECK(node_step(0.01, 0.0, 1.0, 10.0, 1.0, 1.0) >= 0.0);
  CHECK_THROWS_AS(node_step(0.5, 1e-6, 1e-6, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(node_step(0.5, 1e-6, 1e-6, -1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("node_step converges under grid refinement") {
  // Settled voltage moves by far less than 1 mV when dt halves.
  auto settle = [](double dt) {
    double v = 0.0;
    const double t_end = 2000.0;
    for (double t = 0.0; t < t_end; t += dt) v = node_step(v, 1e-5, 2e-7, dt, 1.0, 1.0);
    return v;
  };
  CHECK(std::fabs(settle(1.0) - settle(0.5)) < 1e-3);
}

TEST_CASE("driver output clamps and stays monotone") {
  DriverParams d;  // gain 1, clamp [0, 1]
  CHECK(driver_output(1.0, d) == 1.0);
  CHECK(driver_output(0.0, d) == 0.0);
  CHECK(driver_output(1.2, d) == 1.0);
  CHECK(driver_output(-0.2, d) == 0.0);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng);
    if (a <= b)
      CHECK(driver_output(a, d) <= driver_output(b, d));
    else
      CHECK(driver_output(a, d) >= driver_output(b, d));
  }

  DriverParams bad;
  bad.v_out_min_v = 1.0;
  bad.v_out_max_v = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("latch has exactly two data attractors under bias") {
  BitcellConfig cfg;
  auto fp = latch_fixed_points(cfg);
  REQUIRE(fp.attractors.size() == 2);
  // One attractor near (VDD, 0), the complementary one near (0, VDD).
  bool found_hi = false, found_lo = false;
  for (const auto& [y, yb] : fp.attractors) {
    if (y > 0.95 && yb < 0.05) found_hi = true;
    if (y < 0.05 && yb > 0.95) found_lo = true;
  }
  CHECK(found_hi);
  CHECK(found_lo);
  // The exact symmetric start stays on the ridge and is reported, not hidden.
  CHECK(fp.metastable_detected);
}

TEST_CASE("dark bias collapses the attractors to the divider point") {
  BitcellConfig cfg;
  cfg.bias_power_w = 0.0;
  auto fp = latch_fixed_points(cfg);
  REQUIRE(fp.attractors.size() == 1);
  CHECK(fp.attractors[0].first == doctest::Approx(cfg.vdd_v / 2.0).epsilon(1e-6));
  CHECK(fp.attractors[0].second == doctest::Approx(cfg.vdd_v / 2.0).epsilon(1e-6));
}
