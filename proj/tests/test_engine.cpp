#include <doctest.h>

#include <cmath>

#include "xpsram/bitcell.hpp"
#include "xpsram/engine.hpp"
#include "xpsram/log.hpp"

using namespace xpsram;

namespace {
Schedule bias_schedule(const BitcellConfig& cfg, double t_end_ps) {
  Schedule s;
  s.dt_ps = cfg.dt_ps;
  s.t_end_ps = t_end_ps;
  s.add({ports::kIn, 0.0, t_end_ps, cfg.bias_power_w, cfg.lambda_in});
  return s;
}
}  // namespace

TEST_CASE("empty schedule leaves optical probes dark and nodes in place") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(1);
  Schedule s;
  s.t_end_ps = 1000.0;
  const std::vector<std::string> probes = {ports::kZ, ports::kIn, ports::kX, ports::kY,
                                           ports::kYb};
  auto wf = run(cell, s, probes);
  for (const Waveform& w : wf) {
    if (w.unit == Waveform::Unit::watts)
      for (double v : w.value) CHECK(v == 0.0);
  }
  // Dark dividers leak toward VDD/2 at ~1 mV/ns; over 1 ns the rails are kept.
  CHECK(wf[3].value.back() > 0.998);
  CHECK(wf[4].value.back() < 0.002);
}

TEST_CASE("identical runs produce bit-identical traces") {
  BitcellConfig cfg;
  auto make = [&]() {
    Bitcell cell(cfg);
    cell.init_state(0);
    Schedule s = bias_schedule(cfg, 2000.0);
    s.add({ports::kWbl, 500.0, 50.0, 1e-3, cfg.lambda_in});
    s.add({ports::kXb, 800.0, 100.0, 100e-6, cfg.lambda_in});
    return run(cell, s, std::vector<std::string>{ports::kY, ports::kYb, ports::kZ});
  };
  auto a = make();
  auto b = make();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].size() == b[i].size());
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      CHECK(a[i].t_ps[k] == b[i].t_ps[k]);
      CHECK(a[i].value[k] == b[i].value[k]);  // bit-identical
    }
  }
}

TEST_CASE("no probe changes before the first event that feeds it") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(1);  // stored 1 passes XB light through M4 to Z
  Schedule s = bias_schedule(cfg, 1500.0);
  s.add({ports::kXb, 1000.0, 100.0, 100e-6, cfg.lambda_in});
  auto wf = run(cell, s, std::vector<std::string>{ports::kXb, ports::kZ});
  for (std::size_t k = 0; k < wf[0].size(); ++k) {
    if (wf[0].t_ps[k] < 1000.0) {
      CHECK(wf[0].value[k] == 0.0);
      CHECK(wf[1].value[k] == 0.0);
    }
  }
  CHECK(wf[1].at_time(1050.0) > 0.0);
}

TEST_CASE("grid convergence: halving dt moves settled nodes by under 1 mV") {
  auto settled = [](double dt) {
    BitcellConfig cfg;
    cfg.dt_ps = dt;
    Bitcell cell(cfg);
    cell.init_state(0);
    Schedule s = bias_schedule(cfg, 3000.0);
    s.dt_ps = dt;
    s.add({ports::kWbl, 500.0, 50.0, 1e-3, cfg.lambda_in});
    auto wf = run(cell, s, std::vector<std::string>{ports::kY, ports::kYb});
    return std::pair{wf[0].value.back(), wf[1].value.back()};
  };
  auto [y1, yb1] = settled(1.0);
  auto [y2, yb2] = settled(0.5);
  CHECK(std::fabs(y1 - y2) < 1e-3);
  CHECK(std::fabs(yb1 - yb2) < 1e-3);
}

TEST_CASE("misaligned pulse edges snap to the grid with a warning") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  Schedule s = bias_schedule(cfg, 300.0);
  s.add({ports::kXb, 100.3, 50.0, 100e-6, cfg.lambda_in});

  int warnings = 0;
  log::set_sink([&](log::Level lv, const std::string& msg) {
    if (lv == log::Level::warn && msg.find("snapped") != std::string::npos) ++warnings;
  });
  auto wf = run(cell, s, std::vector<std::string>{ports::kXb});
  log::reset_sink();
  CHECK(warnings == 1);
  // Pulse runs on [100, 150) after snapping.
  CHECK(wf[0].at_time(100.0) > 0.0);
  CHECK(wf[0].at_time(149.0) > 0.0);
  CHECK(wf[0].at_time(150.0) == 0.0);
}

TEST_CASE("unknown probes and ports are rejected with the available names") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  Schedule s = bias_schedule(cfg, 100.0);
  try {
    run(cell, s, std::vector<std::string>{"Q7"});
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("Q7") != std::string::npos);
    CHECK(msg.find("Z") != std::string::npos);  // lists what exists
  }
  CHECK_THROWS_AS(probe(cell, "Q7"), std::invalid_argument);
  CHECK(probe(cell, ports::kY).unit == Waveform::Unit::volts);
  CHECK(probe(cell, ports::kZ).unit == Waveform::Unit::watts);

  Schedule bad = bias_schedule(cfg, 100.0);
  bad.add({"NOPE", 0.0, 10.0, 1e-6, cfg.lambda_in});
  CHECK_THROWS_AS(run(cell, bad, std::vector<std::string>{ports::kY}),
                  std::invalid_argument);
}

TEST_CASE("schedule validation") {
  Schedule s;
  s.dt_ps = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.dt_ps = 1.0;
  s.t_end_ps = 100.0;
  s.add({ports::kIn, 0.0, 200.0, 1e-6, Wavelength(1310.52)});  // runs past t_end
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  PulseEvent bad;
  bad.port = ports::kIn;
  bad.width_ps = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("a zero-delay optical cycle is a topology error") {
  net::OpticalGraph g;
  const int src = g.add_source("SRC");
  const int mmi = g.add_mmi("LOOP", 2, 0.0);
  const int a = g.add_ring("A", RingParams{}, -1);
  const int b = g.add_ring("B", RingParams{}, -1);
  const int abs1 = g.add_absorber("ABS1");
  const int abs2 = g.add_absorber("ABS2");
  g.connect(src, 0, mmi, 0);
  g.connect(mmi, 0, a, 0);
  g.connect(a, 0, b, 0);     // A thru -> B in
  g.connect(b, 0, mmi, 1);   // B thru -> back into the combiner
  g.connect(a, 1, abs1, 0);
  g.connect(b, 1, abs2, 0);
  CHECK_THROWS_AS(g.finalize(), TopologyError);
}

TEST_CASE("dangling ports fail the wiring self-check") {
  net::OpticalGraph g;
  const int src = g.add_source("SRC");
  const int ring = g.add_ring("R", RingParams{}, -1);
  g.connect(src, 0, ring, 0);
  // ring thru/drop left unwired
  CHECK_THROWS_AS(g.finalize(), TopologyError);
}

TEST_CASE("waveform CSV carries a units comment, header and one row per step") {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(0);
  Schedule s = bias_schedule(cfg, 10.0);
  auto wf = run(cell, s, std::vector<std::string>{ports::kY, ports::kZ});
  const std::string csv = waveform_csv_string(wf);
  CHECK(csv.rfind("# units: ps,V,W\ntime_ps,Y,Z\n", 0) == 0);
  // 11 samples (0..10 ps inclusive) plus two header lines.
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 13);
}
