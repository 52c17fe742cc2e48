#include "xpsram/latch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xpsram/bitcell.hpp"
#include "xpsram/optics.hpp"

namespace xpsram {

void DriverParams::validate() const {
  if (!(v_out_min_v < v_out_max_v))
    throw std::invalid_argument("driver v_out_min must be < v_out_max");
  if (tau_ps < 0.0) throw std::invalid_argument("driver tau_ps must be >= 0");
}

double node_step(double v_v, double g_up_s, double g_down_s, double dt_ps,
                 double vdd_v, double c_node_ff) {
  if (!(dt_ps > 0.0)) throw std::invalid_argument("node_step dt_ps must be > 0");
  if (g_up_s < 0.0 || g_down_s < 0.0)
    throw std::invalid_argument("node_step conductances must be >= 0");
  if (!(c_node_ff > 0.0)) throw std::invalid_argument("node capacitance must be > 0");
  const double c_f = c_node_ff * 1e-15;
  const double dt_s = dt_ps * 1e-12;
  const double i_a = g_up_s * (vdd_v - v_v) - g_down_s * v_v;
  const double v_next = v_v + dt_s * i_a / c_f;
  return std::clamp(v_next, 0.0, vdd_v);
}

double driver_output(double v_node_v, const DriverParams& params) {
  return std::clamp(params.gain * v_node_v, params.v_out_min_v, params.v_out_max_v);
}

namespace {

// Self-consistent divider targets for the closed latch loop under bias-only
// illumination: drivers set the ring detunings, the rings set the divider
// conductances, the dividers set the node targets.
std::pair<double, double> divider_targets(const BitcellConfig& cfg, double v_y,
                                          double v_yb) {
  const auto [bias_a, bias_b] = split_5050(cfg.bias_power_w, cfg.il_split_db);
  RingState m1{cfg.ring_m1, driver_output(v_yb, cfg.driver_d2), 0.0};
  RingState m2{cfg.ring_m2, driver_output(v_y, cfg.driver_d1), 0.0};
  const RingTransfer t1 = ring_transfer(bias_a, cfg.lambda_in, m1);
  const RingTransfer t2 = ring_transfer(bias_b, cfg.lambda_in, m2);
  const double g_p1 = pd_conductance(t1.thru_w, cfg.pd_p1);
  const double g_p2 = pd_conductance(t1.drop_w, cfg.pd_p2);
  const double g_p3 = pd_conductance(t2.thru_w, cfg.pd_p3);
  const double g_p4 = pd_conductance(t2.drop_w, cfg.pd_p4);
  const double y = (g_p1 + g_p2) > 0.0 ? cfg.vdd_v * g_p1 / (g_p1 + g_p2) : v_y;
  const double yb = (g_p3 + g_p4) > 0.0 ? cfg.vdd_v * g_p3 / (g_p3 + g_p4) : v_yb;
  return {y, yb};
}

}  // namespace

LatchFixedPoints latch_fixed_points(const BitcellConfig& config) {
  config.validate();
  const double vdd = config.vdd_v;
  const std::pair<double, double> starts[] = {
      {0.0, vdd}, {vdd, 0.0}, {vdd / 2.0, vdd / 2.0}};

  // Damped fixed-point iteration; the damping keeps the discrete map stable
  // where the loop gain exceeds one (the same attractors as the node ODE).
  constexpr double kAlpha = 0.25;
  constexpr int kMaxIters = 400;
  constexpr double kTol = 1e-10;

  LatchFixedPoints result;
  for (const auto& [y0, yb0] : starts) {
    double y = y0, yb = yb0;
    bool converged = false;
    for (int i = 0; i < kMaxIters; ++i) {
      const auto [ty, tyb] = divider_targets(config, y, yb);
      const double ny = y + kAlpha * (ty - y);
      const double nyb = yb + kAlpha * (tyb - yb);
      const double delta = std::max(std::fabs(ny - y), std::fabs(nyb - yb));
      y = ny;
      yb = nyb;
      if (delta < kTol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error(
          "latch_fixed_points: loop did not settle within the iteration cap "
          "(oscillatory closed-loop response)");

    const bool symmetric_start = std::fabs(y0 - yb0) < 1e-12;
    if (symmetric_start && std::fabs(y - yb) < 1e-3) {
      // Exact symmetric initialization stays on the metastable ridge instead
      // of picking a side; report it rather than listing it as a data state.
      result.metastable_detected = true;
      continue;
    }
    const bool duplicate =
        std::any_of(result.attractors.begin(), result.attractors.end(),
                    [&](const auto& a) {
                      return std::fabs(a.first - y) < 1e-6 &&
                             std::fabs(a.second - yb) < 1e-6;
                    });
    if (!duplicate) result.attractors.emplace_back(y, yb);
  }
  return result;
}

}  // namespace xpsram
