#include "xpsram/energy.hpp"

#include <algorithm>
#include <cmath>

#include "xpsram/netlist.hpp"

namespace xpsram {

double optical_energy_fj(const Schedule& schedule, double t0_ps, double t1_ps) {
  if (t1_ps < t0_ps) throw std::invalid_argument("energy window is reversed");
  double joules = 0.0;
  for (const PulseEvent& ev : schedule.events) {
    const double a = std::max(t0_ps, ev.t_start_ps);
    const double b = std::min(t1_ps, ev.t_start_ps + ev.width_ps);
    if (b > a) joules += ev.power_w * (b - a) * 1e-12;
  }
  return joules_to_fj(joules);
}

namespace {

const Waveform& find_trace(std::span<const Waveform> traces, const std::string& probe) {
  for (const Waveform& w : traces)
    if (w.probe == probe) return w;
  std::string have;
  for (const Waveform& w : traces) {
    if (!have.empty()) have += ", ";
    have += w.probe;
  }
  throw ConfigError("electrical energy needs probe '" + probe +
                    "' but the run recorded only: " + have);
}

// Left-rectangle sum of f(sample) * dt over samples with t in [t0, t1).
template <typename F>
double integrate_ps(const Waveform& w, double t0_ps, double t1_ps, F f) {
  if (w.size() < 2) return 0.0;
  const double dt = w.t_ps[1] - w.t_ps[0];
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double t = w.t_ps[k];
    if (t >= t0_ps - 1e-9 && t < t1_ps - 1e-9) acc += f(w.value[k]) * dt;
  }
  return acc;
}

}  // namespace

double electrical_energy_fj(std::span<const Waveform> traces, double t0_ps,
                            double t1_ps, const ElectricalModel& model) {
  if (t1_ps < t0_ps) throw std::invalid_argument("energy window is reversed");

  // Photodiode biasing: each PD sits at the bias rail; photocurrent is
  // responsivity * incident power, plus the dark-conductance leakage.
  double joules = 0.0;
  for (const ElectricalModel::PdProbe& pd : model.pds) {
    const Waveform& w = find_trace(traces, pd.probe);
    const double v = model.calib.v_pd_bias_v;
    const double ws = integrate_ps(w, t0_ps, t1_ps, [&](double p_w) {
      return v * (pd.params.responsivity_a_per_w * p_w + pd.params.g_dark_s * v);
    });
    joules += ws * 1e-12;  // ps -> s
  }

  // Driver switching: one effective C_drv charge per output transition
  // through VDD/2 inside the window.
  int transitions = 0;
  for (const std::string& name : model.driver_probes) {
    const Waveform& w = find_trace(traces, name);
    const double thr = model.vdd_v / 2.0;
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (w.t_ps[k] < t0_ps - 1e-9 || w.t_ps[k] >= t1_ps - 1e-9) continue;
      const bool before = w.value[k - 1] > thr;
      const bool after = w.value[k] > thr;
      if (before != after) ++transitions;
    }
  }
  joules += static_cast<double>(transitions) * model.calib.c_drv_ff * 1e-15 *
            model.vdd_v * model.vdd_v;

  return joules_to_fj(joules);
}

double thermal_tuning_power_mw(double delta_lambda_nm, const RingParams& params) {
  const double half_fsr = fsr_nm(params) / 2.0;
  const double mag = std::fabs(delta_lambda_nm);
  if (mag > half_fsr * (1.0 + 1e-12))
    throw std::invalid_argument(
        "thermal trim of " + std::to_string(mag) + " nm exceeds half an FSR (" +
        std::to_string(half_fsr) + " nm); wrap to the adjacent resonance order instead");
  if (!(params.s_th_nm_per_mw > 0.0))
    throw std::invalid_argument("ring has no thermal tuning coefficient");
  return mag / params.s_th_nm_per_mw;
}

EnergyReport make_energy_report(const std::string& op_kind, const Schedule& schedule,
                                std::span<const Waveform> traces, double window_start_ps,
                                double window_end_ps, const ElectricalModel& model,
                                double thermal_static_mw) {
  EnergyReport r;
  r.op_kind = op_kind;
  r.window_ps = window_end_ps - window_start_ps;
  r.optical_fj = optical_energy_fj(schedule, window_start_ps, window_end_ps);
  r.electrical_fj = electrical_energy_fj(traces, window_start_ps, window_end_ps, model);
  r.total_fj = r.optical_fj + r.electrical_fj;
  r.thermal_static_mw = thermal_static_mw;
  return r;
}

std::span<const ComparisonRow> comparison_table() {
  static const ComparisonRow rows[] = {
      {"8T-SRAM IMC", 3.0, 17.25, "electrical in-memory XOR"},
      {"XNOR-SRAM IMC", 0.85, 3679.0, "electrical in-memory XNOR"},
      {"Boolean photonic XOR (DC-tuned MRR)", 10.0, -1.0, "photonic XOR, no memory"},
      {"Boolean photonic XOR (EO modulator)", 0.05, -1.0, "photonic XOR, no memory"},
      {"InP optical flip-flop", 0.2, 7960.0, "optical memory, no compute"},
      {"This work", 0.1, 13.15, "photonic in-memory XOR/XNOR"},
  };
  return rows;
}

}  // namespace xpsram
