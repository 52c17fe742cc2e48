#pragma once

#include <span>
#include <string>
#include <vector>

#include "xpsram/optics.hpp"
#include "xpsram/schedule.hpp"

namespace xpsram {

// Declared calibration constants for the electrical estimate. The PD term is
// V_bias * (responsivity * P_incident + g_dark * V_bias) integrated over the
// window; the driver term charges c_drv once per output transition.
struct EnergyCalibration {
  double c_drv_ff = 1.4;
  double v_pd_bias_v = 1.0;  // = VDD
};

struct EnergyReport {
  std::string op_kind;
  double window_ps = 0.0;
  double optical_fj = 0.0;
  double electrical_fj = 0.0;
  double total_fj = 0.0;           // optical + electrical
  double thermal_static_mw = 0.0;  // heater DC power, never folded into fJ
};

// Exact analytic sum of pulse power x overlap with [t0, t1); no grid, no
// model constants.
double optical_energy_fj(const Schedule& schedule, double t0_ps, double t1_ps);

// Ties probe names to PD parameters for the electrical integral.
struct ElectricalModel {
  struct PdProbe {
    std::string probe;  // waveform of incident optical power (watts)
    PdParams params;
  };
  std::vector<PdProbe> pds;
  std::vector<std::string> driver_probes;  // waveforms of driver output volts
  EnergyCalibration calib;
  double vdd_v = 1.0;
};

// Left-rectangle integral over samples in [t0, t1) so adjacent windows add
// exactly. Throws ConfigError when a named probe is missing from `traces`.
double electrical_energy_fj(std::span<const Waveform> traces, double t0_ps,
                            double t1_ps, const ElectricalModel& model);

// Heater power for a resonance correction: P = |dlambda| / s_th, exactly
// 7.2 mW at half an FSR with defaults. Throws beyond half an FSR (wrap to the
// adjacent resonance order instead).
double thermal_tuning_power_mw(double delta_lambda_nm, const RingParams& params);

EnergyReport make_energy_report(const std::string& op_kind, const Schedule& schedule,
                                std::span<const Waveform> traces, double window_start_ps,
                                double window_end_ps, const ElectricalModel& model,
                                double thermal_static_mw);

// Reference comparison rows (reported energies/latencies of other XOR compute
// macros); static data for the --compare report.
struct ComparisonRow {
  std::string label;
  double latency_ns;
  double energy_fj;  // < 0 when not reported
  std::string method;
};
std::span<const ComparisonRow> comparison_table();

}  // namespace xpsram
