#include <doctest.h>

#include <cmath>

#include "xpsram/array.hpp"
#include "xpsram/bitcell.hpp"
#include "xpsram/energy.hpp"

using namespace xpsram;

namespace {
ElectricalModel default_model(const BitcellConfig& cfg) {
  ElectricalModel m;
  m.pds = {{"P1", cfg.pd_p1}, {"P2", cfg.pd_p2}, {"P3", cfg.pd_p3}, {"P4", cfg.pd_p4}};
  m.driver_probes = {"D1", "D2"};
  m.calib.v_pd_bias_v = cfg.vdd_v;
  m.vdd_v = cfg.vdd_v;
  return m;
}
}  // namespace

TEST_CASE("optical energy is the exact pulse-overlap sum") {
  Schedule s;
  s.t_end_ps = 1000.0;
  const Wavelength l(1310.52);
  s.add({"XB", 100.0, 100.0, 100e-6, l});
  s.add({"IN", 0.0, 1000.0, 10e-6, l});

  // XOR window: 100 uW * 100 ps + 10 uW * 100 ps = 11 fJ, checked against an
  // independently written overlap sum.
  const double window_fj = optical_energy_fj(s, 100.0, 200.0);
  double by_hand = 0.0;
  by_hand += 100e-6 * 100e-12;  // probe pulse fully inside
  by_hand += 10e-6 * 100e-12;   // bias overlap with the window
  CHECK(window_fj == doctest::Approx(by_hand * 1e15).epsilon(1e-12));
  CHECK(window_fj == doctest::Approx(11.0).epsilon(1e-12));

  // Dark window.
  Schedule empty;
  empty.t_end_ps = 100.0;
  CHECK(optical_energy_fj(empty, 0.0, 100.0) == 0.0);

  // Additivity over adjacent disjoint windows.
  const double left = optical_energy_fj(s, 0.0, 150.0);
  const double right = optical_energy_fj(s, 150.0, 1000.0);
  CHECK(left + right == doctest::Approx(optical_energy_fj(s, 0.0, 1000.0)).epsilon(1e-12));
}

TEST_CASE("write and hold optical energies from the defaults") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(0);
  cell.hold(500.0);
  WriteResult w = cell.write(1);
  // 1 mW * 50 ps + 10 uW * 50 ps = 50.5 fJ over the pulse window.
  CHECK(optical_energy_fj(w.schedule, w.window_start_ps, w.window_end_ps) ==
        doctest::Approx(50.5).epsilon(1e-12));

  HoldResult h = cell.hold(1000.0);
  CHECK(optical_energy_fj(h.schedule, h.window_start_ps, h.window_end_ps) ==
        doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("xor electrical energy lands on the calibrated 2.2 fJ") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(1);
  cell.hold(500.0);
  ReadResult r = cell.xor_compute(1);
  const double fj = electrical_energy_fj(r.traces, r.window_start_ps, r.window_end_ps,
                                         default_model(cfg));
  CHECK(fj > 2.2 * 0.7);
  CHECK(fj < 2.2 * 1.3);
}

TEST_CASE("full xor report: 11 fJ optical, 13.2 fJ total within 10%") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(0);
  cell.hold(500.0);
  ReadResult r = cell.xor_compute(1);
  EnergyReport rep = make_energy_report("xor", r.schedule, r.traces, r.window_start_ps,
                                        r.window_end_ps, default_model(cfg), 0.0);
  CHECK(rep.optical_fj == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(rep.total_fj == doctest::Approx(rep.optical_fj + rep.electrical_fj).epsilon(1e-12));
  CHECK(rep.total_fj > 13.2 * 0.9);
  CHECK(rep.total_fj < 13.2 * 1.1);
  CHECK(rep.window_ps == doctest::Approx(100.0));
  CHECK(rep.thermal_static_mw == 0.0);
}

TEST_CASE("dark window reports only leakage-level electrical energy") {
  BitcellConfig cfg;
  cfg.bias_power_w = 0.0;
  Bitcell cell(cfg);
  cell.init_state(0);
  HoldResult h = cell.hold(100.0);
  const double fj = electrical_energy_fj(h.traces, h.window_start_ps, h.window_end_ps,
                                         default_model(cfg));
  // Four PDs leaking g_dark * VDD^2 for 100 ps is 4e-4 fJ.
  CHECK(fj > 0.0);
  CHECK(fj == doctest::Approx(4e-4).epsilon(1e-6));
}

TEST_CASE("driver switching term is linear in the transition count") {
  // Synthetic driver traces: one rail flip vs two.
  auto mk = [](std::initializer_list<double> vals) {
    Waveform w;
    w.probe = "D1";
    w.unit = Waveform::Unit::volts;
    double t = 0.0;
    for (double v : vals) {
      w.t_ps.push_back(t);
      w.value.push_back(v);
      t += 1.0;
    }
    return w;
  };
  Waveform flat = mk({0, 0, 0, 0, 0, 0});
  flat.probe = "D2";

  ElectricalModel m;
  m.driver_probes = {"D1", "D2"};
  m.calib.c_drv_ff = 1.4;
  m.vdd_v = 1.0;

  std::vector<Waveform> one = {mk({0, 0, 1, 1, 1, 1}), flat};
  std::vector<Waveform> two = {mk({0, 0, 1, 1, 0, 0}), flat};
  const double e1 = electrical_energy_fj(one, 0.0, 6.0, m);
  const double e2 = electrical_energy_fj(two, 0.0, 6.0, m);
  CHECK(e1 == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(e2 == doctest::Approx(2.8).epsilon(1e-12));
}

TEST_CASE("electrical energy grows with illumination") {
  auto pd_trace = [](double watts) {
    Waveform w;
    w.probe = "P1";
    w.unit = Waveform::Unit::watts;
    for (int k = 0; k < 10; ++k) {
      w.t_ps.push_back(k);
      w.value.push_back(watts);
    }
    return w;
  };
  ElectricalModel m;
  m.pds = {{"P1", PdParams{}}};
  const std::vector<Waveform> lo_traces{pd_trace(1e-6)};
  const std::vector<Waveform> hi_traces{pd_trace(5e-6)};
  const double lo = electrical_energy_fj(lo_traces, 0.0, 10.0, m);
  const double hi = electrical_energy_fj(hi_traces, 0.0, 10.0, m);
  CHECK(lo >= 0.0);
  CHECK(hi > lo);
}

TEST_CASE("missing probes are reported by name") {
  ElectricalModel m;
  m.pds = {{"P9", PdParams{}}};
  std::vector<Waveform> traces;
  try {
    electrical_energy_fj(traces, 0.0, 10.0, m);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("P9") != std::string::npos);
  }
}

TEST_CASE("thermal tuning power is linear and exact at half an FSR") {
  RingParams ring;
  const double fsr = fsr_nm(ring);
  CHECK(thermal_tuning_power_mw(0.0, ring) == 0.0);
  CHECK(thermal_tuning_power_mw(fsr / 2.0, ring) == doctest::Approx(7.2).epsilon(1e-12));
  CHECK(thermal_tuning_power_mw(fsr / 4.0, ring) == doctest::Approx(3.6).epsilon(1e-12));
  CHECK(thermal_tuning_power_mw(-fsr / 4.0, ring) == doctest::Approx(3.6).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_tuning_power_mw(fsr * 0.6, ring), std::invalid_argument);
}

TEST_CASE("energy reports add over disjoint windows") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(0);
  cell.hold(500.0);
  ReadResult r = cell.xor_compute(1);
  const ElectricalModel m = default_model(cfg);
  const double mid = (r.window_start_ps + r.window_end_ps) / 2.0;
  EnergyReport left = make_energy_report("xor", r.schedule, r.traces,
                                         r.window_start_ps, mid, m, 0.0);
  EnergyReport right =
      make_energy_report("xor", r.schedule, r.traces, mid, r.window_end_ps, m, 0.0);
  EnergyReport whole = make_energy_report("xor", r.schedule, r.traces,
                                          r.window_start_ps, r.window_end_ps, m, 0.0);
  CHECK(left.optical_fj + right.optical_fj ==
        doctest::Approx(whole.optical_fj).epsilon(1e-12));
  CHECK(left.electrical_fj + right.electrical_fj ==
        doctest::Approx(whole.electrical_fj).epsilon(1e-12));
}

TEST_CASE("read reports the same window breakdown as xor") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(1);
  cell.hold(500.0);
  ReadResult r = cell.read();
  EnergyReport rep = make_energy_report("read", r.schedule, r.traces, r.window_start_ps,
                                        r.window_end_ps, default_model(cfg), 0.0);
  CHECK(rep.optical_fj == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(rep.electrical_fj > 1.5);
  CHECK(rep.electrical_fj < 2.9);
}

TEST_CASE("8-bit WDM compute energy: per-channel pulses plus per-row bias") {
  BitcellConfig cfg;
  ChannelPlan plan = plan_channels(8, cfg.ring_m3);
  XpsramArray arr(8, 1, plan, cfg);
  arr.init_stored(0, parse_word("10010011"));
  arr.settle(500.0);
  auto res = arr.single_shot_xor(parse_word("11001010"));
  const double fj = optical_energy_fj(res.schedule, res.window_start_ps, res.window_end_ps);
  // 8 x 100 uW x 100 ps inputs + 8 x 10 uW x 100 ps row biases = 88 fJ.
  CHECK(fj == doctest::Approx(88.0).epsilon(1e-12));
  // Per bit no worse than the single-bit 11 fJ optical cost.
  CHECK(fj / 8.0 <= 11.0 + 1e-9);
}

TEST_CASE("comparison table carries the reference rows") {
  auto rows = comparison_table();
  REQUIRE(rows.size() == 6);
  CHECK(rows.back().label == "This work");
  CHECK(rows.back().energy_fj == doctest::Approx(13.15));
  bool has_1725 = false, has_3679 = false, has_7960 = false;
  for (const auto& r : rows) {
    if (std::fabs(r.energy_fj - 17.25) < 1e-9) has_1725 = true;
    if (std::fabs(r.energy_fj - 3679.0) < 1e-9) has_3679 = true;
    if (std::fabs(r.energy_fj - 7960.0) < 1e-9) has_7960 = true;
  }
  CHECK(has_1725);
  CHECK(has_3679);
  CHECK(has_7960);
}
