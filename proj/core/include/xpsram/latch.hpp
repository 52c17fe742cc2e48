#pragma once

#include <utility>
#include <vector>

namespace xpsram {

struct BitcellConfig;

// Voltages of the electro-optic storage nodes. Both stay in [0, VDD]
// (node_step clamps).
struct LatchState {
  double v_y_v = 0.0;
  double v_yb_v = 0.0;
};

// Non-inverting clamped buffer between a storage node and the rings it
// modulates. The default gain saturates the output at the rail once the node
// is within a third of it, so a settled latch always drives its resonant ring
// fully on wavelength. tau_ps > 0 adds a first-order lag (state lives in the
// netlist).
struct DriverParams {
  double gain = 1.5;
  double v_out_min_v = 0.0;
  double v_out_max_v = 1.0;
  double tau_ps = 0.0;

  void validate() const;
};

// One explicit-Euler step of C dV/dt = g_up (VDD - V) - g_down V, clamped to
// [0, VDD]. Fixed point is VDD * g_up / (g_up + g_down).
double node_step(double v_v, double g_up_s, double g_down_s, double dt_ps,
                 double vdd_v, double c_node_ff);

double driver_output(double v_node_v, const DriverParams& params);

struct LatchFixedPoints {
  // Distinct attractors (v_y, v_yb) reached from the corner initializations.
  std::vector<std::pair<double, double>> attractors;
  // True when the symmetric start stayed symmetric instead of picking a side.
  bool metastable_detected = false;
};

// Settles the closed latch loop (bias illumination only, write/read ports
// dark) from {(0,VDD), (VDD,0), (VDD/2,VDD/2)} and reports the attractors.
// Throws on non-convergence.
LatchFixedPoints latch_fixed_points(const BitcellConfig& config);

}  // namespace xpsram
