#include "xpsram/bitcell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xpsram/engine.hpp"
#include "xpsram/log.hpp"

namespace xpsram {

DiffDrive encode_bit(int bit, double p_x_w, bool swap_polarity) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("logic bit must be 0 or 1");
  if (p_x_w < 0.0) throw std::invalid_argument("encoding power must be >= 0");
  const bool lit_on_x = swap_polarity ? (bit == 0) : (bit == 1);
  DiffDrive d;
  (lit_on_x ? d.x_w : d.xb_w) = p_x_w;
  return d;
}

void BitcellConfig::validate() const {
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  for (const auto* r : {&ring_m1, &ring_m2, &ring_m3, &ring_m4}) {
    try {
      r->validate();
    } catch (const std::exception& e) {
      failures.push_back(e.what());
    }
  }
  for (const auto* p : {&pd_p1, &pd_p2, &pd_p3, &pd_p4}) {
    try {
      p->validate();
    } catch (const std::exception& e) {
      failures.push_back(e.what());
    }
  }
  for (const auto* d : {&driver_d1, &driver_d2}) {
    try {
      d->validate();
    } catch (const std::exception& e) {
      failures.push_back(e.what());
    }
  }

  check(vdd_v > 0.0, "vdd_v must be > 0");
  check(c_node_ff > 0.0, "c_node_ff must be > 0");
  check(bias_power_w >= 0.0, "bias_power_w must be >= 0");
  check(write_power_w > 0.0, "write_power_w must be > 0");
  check(px_power_w >= 0.0, "px_power_w must be >= 0");
  check(write_width_ps > 0.0, "write_width_ps must be > 0");
  check(px_width_ps > 0.0, "px_width_ps must be > 0");
  check(dt_ps > 0.0, "dt_ps must be > 0");
  check(guard_band_frac >= 0.0 && guard_band_frac < 0.9,
        "guard_band_frac must be in [0, 0.9)");
  check(write_settle_deadline_ps > 0.0, "write_settle_deadline_ps must be > 0");
  check(bias_power_w < write_power_w,
        "bias power must stay below the write pulse power (bias >= write breaks "
        "the overpowering condition)");

  // Every ring must resonate at lambda_in when driven to VDD, before any dl
  // retune or thermal trim (1 pm tolerance).
  const char* names[] = {"M1", "M2", "M3", "M4"};
  const RingParams* rings[] = {&ring_m1, &ring_m2, &ring_m3, &ring_m4};
  for (int i = 0; i < 4; ++i) {
    const double res = rings[i]->lambda_geo_nm + rings[i]->s_eo_nm_per_v * vdd_v;
    if (std::fabs(res - lambda_in.nm()) > 1e-3 + 1e-12)
      failures.push_back(std::string(names[i]) + " resonance at VDD is " +
                         std::to_string(res) + " nm, not lambda_in = " +
                         std::to_string(lambda_in.nm()) + " nm (1 pm tolerance)");
  }

  if (!failures.empty()) {
    std::ostringstream os;
    os << "bitcell configuration invalid (" << failures.size() << " checks failed):";
    for (const std::string& f : failures) os << "\n  - " << f;
    throw ConfigError(os.str());
  }
}

const Waveform& OpResult::trace(const std::string& probe) const {
  for (const Waveform& w : traces)
    if (w.probe == probe) return w;
  throw std::out_of_range("operation recorded no probe '" + probe + "'");
}

namespace {
constexpr int kDriveD1 = 0;
constexpr int kDriveD2 = 1;

const std::vector<std::string>& op_probes() {
  static const std::vector<std::string> probes = {
      ports::kY, ports::kYb, ports::kZ,  ports::kIn, ports::kWbl,
      ports::kWblb, ports::kX, ports::kXb, "P1", "P2", "P3", "P4", "D1", "D2"};
  return probes;
}
}  // namespace

Bitcell::Bitcell(BitcellConfig config) : config_(std::move(config)) {
  config_.validate();

  src_in_ = graph_.add_source(ports::kIn);
  src_wbl_ = graph_.add_source(ports::kWbl);
  src_wblb_ = graph_.add_source(ports::kWblb);
  src_x_ = graph_.add_source(ports::kX);
  src_xb_ = graph_.add_source(ports::kXb);

  const int ps1 = graph_.add_splitter("PS1", config_.il_split_db);
  const int ps2 = graph_.add_splitter("PS2", config_.il_split_db);
  const int ps3 = graph_.add_splitter("PS3", config_.il_split_db);

  ring_m1_ = graph_.add_ring("M1", config_.ring_m1, kDriveD2);
  ring_m2_ = graph_.add_ring("M2", config_.ring_m2, kDriveD1);
  ring_m3_ = graph_.add_ring("M3", config_.ring_m3, kDriveD1);
  ring_m4_ = graph_.add_ring("M4", config_.ring_m4, kDriveD2);

  pd_p1_ = graph_.add_pd("P1", config_.pd_p1, 2);
  pd_p2_ = graph_.add_pd("P2", config_.pd_p2, 2);
  pd_p3_ = graph_.add_pd("P3", config_.pd_p3, 2);
  pd_p4_ = graph_.add_pd("P4", config_.pd_p4, 2);

  const int c1 = graph_.add_mmi("C1", 2, config_.il_mmi_db);
  const int a1 = graph_.add_absorber("A1");
  const int a2 = graph_.add_absorber("A2");
  out_z_ = graph_.add_output(ports::kZ);

  // Latch optics: bias fans out to M1/M2; thru rails pull the nodes up,
  // drop rails pull them down.
  graph_.connect(src_in_, 0, ps1, 0);
  graph_.connect(ps1, 0, ring_m1_, 0);
  graph_.connect(ps1, 1, ring_m2_, 0);
  graph_.connect(ring_m1_, 0, pd_p1_, 0);  // M1 thru -> P1 (Y pull-up)
  graph_.connect(ring_m1_, 1, pd_p2_, 0);  // M1 drop -> P2 (Y pull-down)
  graph_.connect(ring_m2_, 0, pd_p3_, 0);  // M2 thru -> P3 (YB pull-up)
  graph_.connect(ring_m2_, 1, pd_p4_, 0);  // M2 drop -> P4 (YB pull-down)

  // Write bitlines: WBL reinforces Y high and YB low; WBLB the reverse.
  graph_.connect(src_wbl_, 0, ps2, 0);
  graph_.connect(ps2, 0, pd_p1_, 1);
  graph_.connect(ps2, 1, pd_p4_, 1);
  graph_.connect(src_wblb_, 0, ps3, 0);
  graph_.connect(ps3, 0, pd_p2_, 1);
  graph_.connect(ps3, 1, pd_p3_, 1);

  // Compute path: X/XB thread M3/M4; thru ports combine into Z, drops are
  // absorbed.
  graph_.connect(src_x_, 0, ring_m3_, 0);
  graph_.connect(src_xb_, 0, ring_m4_, 0);
  graph_.connect(ring_m3_, 0, c1, 0);
  graph_.connect(ring_m3_, 1, a1, 0);
  graph_.connect(ring_m4_, 0, c1, 1);
  graph_.connect(ring_m4_, 1, a2, 0);
  graph_.connect(c1, 0, out_z_, 0);

  graph_.finalize();
  init_state(0);
}

void Bitcell::init_state(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("stored bit must be 0 or 1");
  latch_.v_y_v = bit ? config_.vdd_v : 0.0;
  latch_.v_yb_v = config_.vdd_v - latch_.v_y_v;
  d1_out_v_ = driver_output(latch_.v_y_v, config_.driver_d1);
  d2_out_v_ = driver_output(latch_.v_yb_v, config_.driver_d2);
}

int Bitcell::stored_bit() const {
  return latch_.v_y_v > config_.vdd_v / 2.0 ? 1 : 0;
}

std::vector<std::string> Bitcell::source_ports() const {
  return {ports::kIn, ports::kWbl, ports::kWblb, ports::kX, ports::kXb};
}

void Bitcell::set_source(const std::string& port, const WdmSignal& sig) {
  const int idx = graph_.find(port);
  if (idx < 0) throw std::invalid_argument("unknown source port " + port);
  graph_.set_source_signal(idx, sig);
}

void Bitcell::propagate() {
  if (config_.driver_d1.tau_ps <= 0.0)
    d1_out_v_ = driver_output(latch_.v_y_v, config_.driver_d1);
  if (config_.driver_d2.tau_ps <= 0.0)
    d2_out_v_ = driver_output(latch_.v_yb_v, config_.driver_d2);
  graph_.set_drive(kDriveD1, d1_out_v_);
  graph_.set_drive(kDriveD2, d2_out_v_);
  graph_.propagate();
}

void Bitcell::integrate(double dt_ps) {
  const double g1 = pd_conductance(graph_.pd_incident(pd_p1_).total_w(), config_.pd_p1);
  const double g2 = pd_conductance(graph_.pd_incident(pd_p2_).total_w(), config_.pd_p2);
  const double g3 = pd_conductance(graph_.pd_incident(pd_p3_).total_w(), config_.pd_p3);
  const double g4 = pd_conductance(graph_.pd_incident(pd_p4_).total_w(), config_.pd_p4);
  latch_.v_y_v = node_step(latch_.v_y_v, g1, g2, dt_ps, config_.vdd_v, config_.c_node_ff);
  latch_.v_yb_v = node_step(latch_.v_yb_v, g3, g4, dt_ps, config_.vdd_v, config_.c_node_ff);
  if (config_.driver_d1.tau_ps > 0.0) {
    const double target = driver_output(latch_.v_y_v, config_.driver_d1);
    d1_out_v_ += std::min(1.0, dt_ps / config_.driver_d1.tau_ps) * (target - d1_out_v_);
  }
  if (config_.driver_d2.tau_ps > 0.0) {
    const double target = driver_output(latch_.v_yb_v, config_.driver_d2);
    d2_out_v_ += std::min(1.0, dt_ps / config_.driver_d2.tau_ps) * (target - d2_out_v_);
  }
}

std::vector<std::string> Bitcell::probe_names() const { return op_probes(); }

Waveform::Unit Bitcell::probe_unit(const std::string& name) const {
  if (name == ports::kY || name == ports::kYb || name == "D1" || name == "D2")
    return Waveform::Unit::volts;
  if (has_probe(name)) return Waveform::Unit::watts;
  throw std::invalid_argument("unknown probe " + name);
}

double Bitcell::probe_value(const std::string& name) const {
  if (name == ports::kY) return latch_.v_y_v;
  if (name == ports::kYb) return latch_.v_yb_v;
  if (name == "D1") return d1_out_v_;
  if (name == "D2") return d2_out_v_;
  if (name == ports::kZ) return graph_.output_signal(out_z_).total_w();
  if (name == "P1") return graph_.pd_incident(pd_p1_).total_w();
  if (name == "P2") return graph_.pd_incident(pd_p2_).total_w();
  if (name == "P3") return graph_.pd_incident(pd_p3_).total_w();
  if (name == "P4") return graph_.pd_incident(pd_p4_).total_w();
  const int idx = graph_.find(name);
  if (idx >= 0 && graph_.kind_of(idx) == net::ElemKind::source)
    return graph_.source_signal(idx).total_w();
  throw std::invalid_argument("unknown probe " + name);
}

Schedule Bitcell::op_schedule(double duration_ps) const {
  Schedule s;
  s.dt_ps = config_.dt_ps;
  s.t_start_ps = t_now_ps_;
  s.t_end_ps = t_now_ps_ + duration_ps;
  if (config_.bias_power_w > 0.0)
    s.add({ports::kIn, t_now_ps_, duration_ps, config_.bias_power_w, config_.lambda_in});
  return s;
}

std::vector<Waveform> Bitcell::run_op(const Schedule& schedule) {
  auto traces = run(*this, schedule, op_probes());
  t_now_ps_ = schedule.t_end_ps;
  return traces;
}

HoldResult Bitcell::hold(double duration_ps) {
  if (!(duration_ps > 0.0)) throw std::invalid_argument("hold duration must be > 0");
  HoldResult res;
  res.op_kind = "hold";
  const int initial = stored_bit();
  const double rail_y = initial ? config_.vdd_v : 0.0;
  const double rail_yb = config_.vdd_v - rail_y;
  const double tol = 0.05 * config_.vdd_v;

  res.schedule = op_schedule(duration_ps);
  res.window_start_ps = res.schedule.t_start_ps;
  res.window_end_ps = res.schedule.t_end_ps;
  res.traces = run_op(res.schedule);

  const Waveform& wy = res.trace(ports::kY);
  const Waveform& wyb = res.trace(ports::kYb);
  bool flipped = false;
  for (std::size_t k = 0; k < wy.size(); ++k) {
    const int b = wy.value[k] > config_.vdd_v / 2.0 ? 1 : 0;
    if (b != initial) flipped = true;
  }
  const bool end_on_rails = std::fabs(wy.value.back() - rail_y) <= tol &&
                            std::fabs(wyb.value.back() - rail_yb) <= tol;
  res.stable = end_on_rails && !flipped;

  if (config_.bias_power_w <= 0.0) {
    // No restoring force without the bias laser: the latch loses its data
    // attractors (both nodes relax toward the dark-divider point).
    res.stable = false;
    res.diagnostic = "stability-violation: bias laser dark during hold, retention not guaranteed";
  } else if (flipped) {
    res.diagnostic = "stability-violation: stored state flipped during hold";
  } else if (!end_on_rails) {
    res.diagnostic = "stability-violation: node left its rail by more than 5% of VDD";
  }
  return res;
}

WriteResult Bitcell::write(int bit, double post_settle_ps) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("write bit must be 0 or 1");
  if (post_settle_ps < 0.0) throw std::invalid_argument("post_settle_ps must be >= 0");
  WriteResult res;
  res.op_kind = "write";
  const double t0 = t_now_ps_;
  const double duration = config_.write_width_ps + post_settle_ps;

  res.schedule = op_schedule(duration);
  res.schedule.add({bit ? ports::kWbl : ports::kWblb, t0, config_.write_width_ps,
                    config_.write_power_w, config_.lambda_in});
  res.window_start_ps = t0;
  res.window_end_ps = t0 + config_.write_width_ps;
  res.traces = run_op(res.schedule);

  const double rail_y = bit ? config_.vdd_v : 0.0;
  const double rail_yb = config_.vdd_v - rail_y;
  const double tol = 0.05 * config_.vdd_v;
  const Waveform& wy = res.trace(ports::kY);
  const Waveform& wyb = res.trace(ports::kYb);

  // Earliest time after which both nodes stay within 5% of their target
  // rails through the end of the op.
  std::ptrdiff_t last_bad = -1;
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(wy.size()); ++k) {
    const bool in_band = std::fabs(wy.value[k] - rail_y) <= tol &&
                         std::fabs(wyb.value[k] - rail_yb) <= tol;
    if (!in_band) last_bad = k;
  }
  if (last_bad + 1 < static_cast<std::ptrdiff_t>(wy.size())) {
    res.settle_time_ps = wy.t_ps[static_cast<std::size_t>(last_bad + 1)] - t0;
    res.flipped = true;
  }
  const double deadline =
      std::min(config_.write_settle_deadline_ps, duration);
  if (!res.flipped || res.settle_time_ps > deadline + 1e-9) {
    res.flipped = res.flipped && res.settle_time_ps <= deadline + 1e-9;
    res.settle_time_ps = res.flipped ? res.settle_time_ps : -1.0;
    res.diagnostic = "write-failure: node voltages did not settle to the target rails within " +
                     std::to_string(deadline) + " ps of pulse start";
  }
  return res;
}

ReadResult Bitcell::read() {
  // Active-high read pulses XB (equivalent to computing against input 0);
  // the active-low option pulses X and decodes inverted.
  ReadResult res = compute_impl("read", config_.active_low_read ? 1 : 0, false);
  if (config_.active_low_read && res.bit >= 0) res.bit = 1 - res.bit;
  return res;
}

ReadResult Bitcell::xor_compute(int input_bit) {
  return compute_impl("xor", input_bit, false);
}

ReadResult Bitcell::xnor_compute(int input_bit) {
  return compute_impl("xnor", input_bit, true);
}

ReadResult Bitcell::compute_impl(const char* op_kind, int input_bit, bool swap_polarity) {
  if (input_bit != 0 && input_bit != 1)
    throw std::invalid_argument("compute input bit must be 0 or 1");
  if (!calibrated()) calibrate_threshold();

  ReadResult res;
  res.op_kind = op_kind;
  const double t0 = t_now_ps_;
  const double width = config_.px_width_ps;
  const DiffDrive drive = encode_bit(input_bit, config_.px_power_w, swap_polarity);

  res.schedule = op_schedule(width);
  if (drive.x_w > 0.0)
    res.schedule.add({ports::kX, t0, width, drive.x_w, config_.lambda_in});
  if (drive.xb_w > 0.0)
    res.schedule.add({ports::kXb, t0, width, drive.xb_w, config_.lambda_in});
  res.window_start_ps = t0;
  res.window_end_ps = t0 + width;
  res.traces = run_op(res.schedule);

  res.p_z_w = res.trace(ports::kZ).mean_over(t0 + width / 4.0, t0 + 3.0 * width / 4.0);

  const double thr = decode_threshold_w();
  res.bit = res.p_z_w > thr ? 1 : 0;
  const double guard = config_.guard_band_frac;
  if (config_.px_power_w <= 0.0) {
    res.indeterminate = true;
    res.bit = -1;
    res.diagnostic = std::string("indeterminate-read: ") +
                     "probe pulse carries no power, Z level is meaningless";
  } else if (res.p_z_w >= thr * (1.0 - guard) && res.p_z_w <= thr * (1.0 + guard)) {
    res.indeterminate = true;
    res.diagnostic = "indeterminate-read: Z power " + std::to_string(w_to_uw(res.p_z_w)) +
                     " uW lies inside the guard band around " +
                     std::to_string(w_to_uw(thr)) + " uW";
  }
  return res;
}

double Bitcell::calibrate_threshold() {
  // Measure the four compute corners on a scratch instance so calibration
  // never disturbs the live latch state.
  Bitcell scratch(config_);
  double z[2][2];
  for (int stored = 0; stored <= 1; ++stored) {
    scratch.init_state(stored);
    Schedule settle = scratch.op_schedule(500.0);
    scratch.run_op(settle);
    for (int input = 0; input <= 1; ++input) {
      const double t0 = scratch.t_now_ps_;
      const double width = config_.px_width_ps;
      const DiffDrive drive = encode_bit(input, config_.px_power_w, false);
      Schedule s = scratch.op_schedule(width);
      if (drive.x_w > 0.0) s.add({ports::kX, t0, width, drive.x_w, config_.lambda_in});
      if (drive.xb_w > 0.0) s.add({ports::kXb, t0, width, drive.xb_w, config_.lambda_in});
      auto traces = scratch.run_op(s);
      for (const Waveform& w : traces)
        if (w.probe == ports::kZ)
          z[stored][input] = w.mean_over(t0 + width / 4.0, t0 + 3.0 * width / 4.0);
    }
  }

  const double high = std::min(z[0][1], z[1][0]);
  const double low = std::max(z[0][0], z[1][1]);
  if (high <= 0.0 || (low > 0.0 && high / low < 10.0))
    throw CalibrationError(
        "calibration-failure: compute corner contrast " +
        std::to_string(low > 0.0 ? high / low : 0.0) +
        "x is below the required 10x (Z high " + std::to_string(w_to_uw(high)) +
        " uW, Z low " + std::to_string(w_to_uw(low)) + " uW)");
  // A saturated driver can darken the matching corners exactly; floor the low
  // level so the geometric mean stays a usable threshold.
  threshold_w_ = std::sqrt(high * std::max(low, 1e-4 * high));
  return threshold_w_;
}

double Bitcell::decode_threshold_w() const {
  if (threshold_w_ <= 0.0)
    throw std::logic_error("decode threshold not calibrated yet");
  return threshold_w_;
}

void Bitcell::set_decode_threshold(double threshold_w) {
  if (!(threshold_w > 0.0)) throw std::invalid_argument("threshold must be > 0");
  threshold_w_ = threshold_w;
}

}  // namespace xpsram
