#include "xpsram/array.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xpsram/engine.hpp"
#include "xpsram/log.hpp"

namespace xpsram {

double ChannelPlan::spacing_nm() const {
  if (channels.size() < 2) return 0.0;
  return channels[1].lambda_nm - channels[0].lambda_nm;
}

void ChannelPlan::validate() const {
  if (channels.empty()) throw ConfigError("channel plan is empty");
  if (!(fsr_nm > 0.0)) throw ConfigError("channel plan fsr must be > 0");
  for (std::size_t i = 1; i < channels.size(); ++i) {
    if (!(channels[i].lambda_nm > channels[i - 1].lambda_nm))
      throw ConfigError("channel plan wavelengths must be strictly increasing");
  }
  const double span = channels.back().lambda_nm - channels.front().lambda_nm;
  if (span > fsr_nm + 1e-9)
    throw ConfigError("channel plan spans more than one FSR");
  // 34 nm dl steps pitch the comb at FSR/8 for any row count; reject plans
  // packed tighter than 90% of that design pitch.
  const double min_spacing = fsr_nm / 8.0 * 0.9;
  for (std::size_t i = 1; i < channels.size(); ++i) {
    const double gap = channels[i].lambda_nm - channels[i - 1].lambda_nm;
    if (gap < min_spacing)
      throw ConfigError("channel spacing " + std::to_string(gap) +
                        " nm is under 90% of the FSR/8 design pitch");
  }
}

ChannelPlan plan_channels(int rows, const RingParams& compute_ring) {
  constexpr int kMaxRows = 8;
  constexpr double kStepNm = 34.0;
  if (rows < 1) throw ConfigError("channel plan needs at least one row");
  if (rows > kMaxRows)
    throw ConfigError("capacity error: " + std::to_string(rows) +
                      " rows exceed the " + std::to_string(kMaxRows) +
                      " channels that fit a single free spectral range at dl steps of 34 nm");
  ChannelPlan plan;
  plan.fsr_nm = fsr_nm(compute_ring);
  // Base channel is the undisturbed ring driven to resonance at the 1 V
  // operating point; each further row adds one 34 nm dl step (FSR/8).
  RingParams base = compute_ring;
  base.dl_nm = 0.0;
  const double lambda1 = base.lambda_geo_nm + base.s_eo_nm_per_v * 1.0;
  for (int i = 0; i < rows; ++i) {
    ChannelPlan::Channel ch;
    ch.row = i;
    ch.dl_nm = static_cast<double>(i) * kStepNm;
    ch.lambda_nm = lambda1 + dl_shift_nm(ch.dl_nm, base);
    plan.channels.push_back(ch);
  }
  plan.validate();
  return plan;
}

Word parse_word(const std::string& text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("word '" + text + "' must be binary digits only");
    w.push_back(c - '0');
  }
  if (w.empty()) throw std::invalid_argument("word must not be empty");
  return w;
}

std::string format_word(const Word& word) {
  std::string s;
  for (int b : word) s += (b == 1 ? '1' : (b == 0 ? '0' : 'x'));
  return s;
}

WdmDrive encode_input_word(const Word& word, const ChannelPlan& plan, double p_x_w,
                           bool swap_polarity) {
  if (static_cast<int>(word.size()) != plan.rows())
    throw std::invalid_argument("input word length " + std::to_string(word.size()) +
                                " does not match the " + std::to_string(plan.rows()) +
                                "-channel plan");
  if (p_x_w == 0.0)
    log::warn("encode_input_word: p_x is zero, both rails are dark (degenerate encoding)");
  WdmDrive out;
  for (int i = 0; i < plan.rows(); ++i) {
    const DiffDrive d = encode_bit(word[static_cast<std::size_t>(i)], p_x_w, swap_polarity);
    const Wavelength lambda(plan.channels[static_cast<std::size_t>(i)].lambda_nm);
    if (d.x_w > 0.0) out.x.add(lambda, d.x_w);
    if (d.xb_w > 0.0) out.xb.add(lambda, d.xb_w);
  }
  return out;
}

Word ColumnSpectrum::decoded_word() const {
  Word w;
  for (const ChannelReading& r : readings) w.push_back(r.decoded_bit);
  return w;
}

ColumnSpectrum decode_column_spectrum(const std::vector<double>& power_w,
                                      const ChannelPlan& plan,
                                      const std::vector<double>& thresholds_w,
                                      double guard_band_frac) {
  if (power_w.size() != static_cast<std::size_t>(plan.rows()) ||
      thresholds_w.size() != power_w.size())
    throw std::invalid_argument("spectrum, plan and thresholds must agree on channel count");
  ColumnSpectrum spec;
  for (std::size_t i = 0; i < power_w.size(); ++i) {
    ChannelReading r;
    r.channel = static_cast<int>(i) + 1;
    r.lambda_nm = plan.channels[i].lambda_nm;
    r.power_w = power_w[i];
    const double thr = thresholds_w[i];
    if (r.power_w >= thr * (1.0 - guard_band_frac) &&
        r.power_w <= thr * (1.0 + guard_band_frac)) {
      r.indeterminate = true;
      r.decoded_bit = -1;
    } else {
      r.decoded_bit = r.power_w > thr ? 1 : 0;
    }
    spec.readings.push_back(r);
  }
  return spec;
}

PopcountResult popcount_accumulate(const ColumnSpectrum& spectrum,
                                   double responsivity_a_per_w,
                                   double per_channel_high_w) {
  if (!(responsivity_a_per_w > 0.0) || !(per_channel_high_w > 0.0))
    throw std::invalid_argument("popcount needs positive responsivity and high level");
  PopcountResult res;
  double total_w = 0.0;
  for (const ChannelReading& r : spectrum.readings) total_w += r.power_w;
  res.photocurrent_a = responsivity_a_per_w * total_w;
  const double units = res.photocurrent_a / (responsivity_a_per_w * per_channel_high_w);
  res.count = static_cast<int>(std::llround(units));
  if (std::fabs(units - std::llround(units)) > 0.4) {
    res.ambiguous = true;
    res.diagnostic = "popcount ambiguous: accumulated photocurrent sits " +
                     std::to_string(std::fabs(units - std::llround(units))) +
                     " unit steps from an integer";
  }
  return res;
}

namespace {
std::string cell_suffix(int row, int col) {
  return std::to_string(row + 1) + "_" + std::to_string(col + 1);
}
}  // namespace

XpsramArray::XpsramArray(int rows, int cols, ChannelPlan plan, BitcellConfig base_config)
    : rows_(rows), cols_(cols), plan_(std::move(plan)), config_(std::move(base_config)) {
  if (rows_ < 1 || cols_ < 1) throw ConfigError("array needs at least one row and column");
  plan_.validate();
  if (plan_.rows() != rows_)
    throw ConfigError("channel plan covers " + std::to_string(plan_.rows()) +
                      " rows but the array has " + std::to_string(rows_));
  config_.validate();

  cells_.resize(static_cast<std::size_t>(rows_ * cols_));
  src_x_.resize(static_cast<std::size_t>(cols_));
  src_xb_.resize(static_cast<std::size_t>(cols_));
  out_z_.resize(static_cast<std::size_t>(cols_));

  int next_drive = 0;
  for (int j = 0; j < cols_; ++j) {
    src_x_[static_cast<std::size_t>(j)] = graph_.add_source("X" + std::to_string(j + 1));
    src_xb_[static_cast<std::size_t>(j)] = graph_.add_source("XB" + std::to_string(j + 1));

    int prev_x_elem = src_x_[static_cast<std::size_t>(j)];
    int prev_x_port = 0;
    int prev_xb_elem = src_xb_[static_cast<std::size_t>(j)];
    int prev_xb_port = 0;

    for (int i = 0; i < rows_; ++i) {
      Cell& c = cell(i, j);
      const std::string sfx = cell_suffix(i, j);
      c.drive_d1 = next_drive++;
      c.drive_d2 = next_drive++;

      c.src_in = graph_.add_source("IN_" + sfx);
      c.src_wbl = graph_.add_source("WBL" + sfx);
      c.src_wblb = graph_.add_source("WBLB" + sfx);

      const int ps1 = graph_.add_splitter("PS1_" + sfx, config_.il_split_db);
      const int ps2 = graph_.add_splitter("PS2_" + sfx, config_.il_split_db);
      const int ps3 = graph_.add_splitter("PS3_" + sfx, config_.il_split_db);

      c.ring_m1 = graph_.add_ring("M1_" + sfx, config_.ring_m1, c.drive_d2);
      c.ring_m2 = graph_.add_ring("M2_" + sfx, config_.ring_m2, c.drive_d1);

      // Compute rings carry the row's dl retune.
      RingParams m3 = config_.ring_m3;
      RingParams m4 = config_.ring_m4;
      m3.dl_nm = plan_.channels[static_cast<std::size_t>(i)].dl_nm;
      m4.dl_nm = plan_.channels[static_cast<std::size_t>(i)].dl_nm;
      c.ring_m3 = graph_.add_ring("M3_" + sfx, m3, c.drive_d1);
      c.ring_m4 = graph_.add_ring("M4_" + sfx, m4, c.drive_d2);

      c.pd_p1 = graph_.add_pd("P1_" + sfx, config_.pd_p1, 2);
      c.pd_p2 = graph_.add_pd("P2_" + sfx, config_.pd_p2, 2);
      c.pd_p3 = graph_.add_pd("P3_" + sfx, config_.pd_p3, 2);
      c.pd_p4 = graph_.add_pd("P4_" + sfx, config_.pd_p4, 2);

      graph_.connect(c.src_in, 0, ps1, 0);
      graph_.connect(ps1, 0, c.ring_m1, 0);
      graph_.connect(ps1, 1, c.ring_m2, 0);
      graph_.connect(c.ring_m1, 0, c.pd_p1, 0);
      graph_.connect(c.ring_m1, 1, c.pd_p2, 0);
      graph_.connect(c.ring_m2, 0, c.pd_p3, 0);
      graph_.connect(c.ring_m2, 1, c.pd_p4, 0);
      graph_.connect(c.src_wbl, 0, ps2, 0);
      graph_.connect(ps2, 0, c.pd_p1, 1);
      graph_.connect(ps2, 1, c.pd_p4, 1);
      graph_.connect(c.src_wblb, 0, ps3, 0);
      graph_.connect(ps3, 0, c.pd_p2, 1);
      graph_.connect(ps3, 1, c.pd_p3, 1);

      // Thread the column buses through this row's compute rings.
      graph_.connect(prev_x_elem, prev_x_port, c.ring_m3, 0);
      graph_.connect(prev_xb_elem, prev_xb_port, c.ring_m4, 0);
      const int a1 = graph_.add_absorber("A1_" + sfx);
      const int a2 = graph_.add_absorber("A2_" + sfx);
      graph_.connect(c.ring_m3, 1, a1, 0);
      graph_.connect(c.ring_m4, 1, a2, 0);
      prev_x_elem = c.ring_m3;
      prev_x_port = 0;  // thru continues down the bus
      prev_xb_elem = c.ring_m4;
      prev_xb_port = 0;

      c.latch.v_y_v = 0.0;
      c.latch.v_yb_v = config_.vdd_v;
      c.d1_out_v = driver_output(c.latch.v_y_v, config_.driver_d1);
      c.d2_out_v = driver_output(c.latch.v_yb_v, config_.driver_d2);
    }

    const int c1 = graph_.add_mmi("C1_" + std::to_string(j + 1), 2, config_.il_mmi_db);
    out_z_[static_cast<std::size_t>(j)] = graph_.add_output("Z" + std::to_string(j + 1));
    graph_.connect(prev_x_elem, prev_x_port, c1, 0);
    graph_.connect(prev_xb_elem, prev_xb_port, c1, 1);
    graph_.connect(c1, 0, out_z_[static_cast<std::size_t>(j)], 0);
  }
  graph_.finalize();

  // Logical source ports. One bias laser per row feeds every cell in the row
  // (ideal distribution, no extra split modeled).
  for (int j = 0; j < cols_; ++j) {
    port_elems_.emplace_back("X" + std::to_string(j + 1),
                             std::vector<int>{src_x_[static_cast<std::size_t>(j)]});
    port_elems_.emplace_back("XB" + std::to_string(j + 1),
                             std::vector<int>{src_xb_[static_cast<std::size_t>(j)]});
  }
  for (int i = 0; i < rows_; ++i) {
    std::vector<int> row_ins;
    for (int j = 0; j < cols_; ++j) row_ins.push_back(cell(i, j).src_in);
    port_elems_.emplace_back("IN" + std::to_string(i + 1), std::move(row_ins));
  }
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      port_elems_.emplace_back("WBL" + cell_suffix(i, j),
                               std::vector<int>{cell(i, j).src_wbl});
      port_elems_.emplace_back("WBLB" + cell_suffix(i, j),
                               std::vector<int>{cell(i, j).src_wblb});
    }
}

void XpsramArray::init_stored(int col, const Word& word) {
  if (col < 0 || col >= cols_) throw std::invalid_argument("column out of range");
  if (static_cast<int>(word.size()) != rows_)
    throw std::invalid_argument("stored word length " + std::to_string(word.size()) +
                                " does not match " + std::to_string(rows_) + " rows");
  for (int i = 0; i < rows_; ++i) {
    const int bit = word[static_cast<std::size_t>(i)];
    if (bit != 0 && bit != 1) throw std::invalid_argument("stored bits must be 0 or 1");
    Cell& c = cell(i, col);
    c.latch.v_y_v = bit ? config_.vdd_v : 0.0;
    c.latch.v_yb_v = config_.vdd_v - c.latch.v_y_v;
    c.d1_out_v = driver_output(c.latch.v_y_v, config_.driver_d1);
    c.d2_out_v = driver_output(c.latch.v_yb_v, config_.driver_d2);
  }
}

Word XpsramArray::stored_word(int col) const {
  Word w;
  for (int i = 0; i < rows_; ++i)
    w.push_back(cell(i, col).latch.v_y_v > config_.vdd_v / 2.0 ? 1 : 0);
  return w;
}

Schedule XpsramArray::compute_schedule(const Word& input) const {
  const double t0 = t_now_ps_;
  const double width = config_.px_width_ps;
  Schedule s;
  s.dt_ps = config_.dt_ps;
  s.t_start_ps = t0;
  s.t_end_ps = t0 + width;
  if (config_.bias_power_w > 0.0) {
    for (int i = 0; i < rows_; ++i)
      s.add({"IN" + std::to_string(i + 1), t0, width, config_.bias_power_w,
             config_.lambda_in});
  }
  const WdmDrive drive = encode_input_word(input, plan_, config_.px_power_w);
  for (int j = 0; j < cols_; ++j) {
    for (const WdmSignal::Channel& ch : drive.x.channels())
      s.add({"X" + std::to_string(j + 1), t0, width, ch.power_w, Wavelength(ch.lambda_nm)});
    for (const WdmSignal::Channel& ch : drive.xb.channels())
      s.add({"XB" + std::to_string(j + 1), t0, width, ch.power_w, Wavelength(ch.lambda_nm)});
  }
  return s;
}

void XpsramArray::settle(double duration_ps) {
  Schedule s;
  s.dt_ps = config_.dt_ps;
  s.t_start_ps = t_now_ps_;
  s.t_end_ps = t_now_ps_ + duration_ps;
  if (config_.bias_power_w > 0.0) {
    for (int i = 0; i < rows_; ++i)
      s.add({"IN" + std::to_string(i + 1), t_now_ps_, duration_ps, config_.bias_power_w,
             config_.lambda_in});
  }
  run(*this, s, {});
  t_now_ps_ = s.t_end_ps;
}

// Runs the schedule and returns per-channel Z powers (index col*rows + ch),
// each averaged over the middle half of the schedule window.
std::vector<double> XpsramArray::measure_channel_powers(const Schedule& schedule,
                                                        std::vector<Waveform>* traces_out) {
  std::vector<std::string> probes;
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i)
      probes.push_back("Z" + std::to_string(j + 1) + ".ch" + std::to_string(i + 1));
  auto traces = run(*this, schedule, probes);
  t_now_ps_ = schedule.t_end_ps;

  const double w = schedule.t_end_ps - schedule.t_start_ps;
  const double m0 = schedule.t_start_ps + w / 4.0;
  const double m1 = schedule.t_start_ps + 3.0 * w / 4.0;
  std::vector<double> powers(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k)
    powers[k] = traces[k].mean_over(m0, m1);
  if (traces_out) *traces_out = std::move(traces);
  return powers;
}

XpsramArray::ComputeResult XpsramArray::single_shot_xor(const Word& input) {
  if (!calibrated()) calibrate();
  ComputeResult res;
  res.schedule = compute_schedule(input);
  res.window_start_ps = res.schedule.t_start_ps;
  res.window_end_ps = res.schedule.t_end_ps;
  const std::vector<double> powers = measure_channel_powers(res.schedule);

  for (int j = 0; j < cols_; ++j) {
    std::vector<double> col_powers(
        powers.begin() + static_cast<std::ptrdiff_t>(j) * rows_,
        powers.begin() + static_cast<std::ptrdiff_t>(j + 1) * rows_);
    ColumnSpectrum spec = decode_column_spectrum(col_powers, plan_, thresholds_w_,
                                                 config_.guard_band_frac);
    for (const ChannelReading& r : spec.readings)
      if (r.indeterminate)
        res.diagnostics.push_back("column " + std::to_string(j + 1) + " channel " +
                                  std::to_string(r.channel) +
                                  " is inside the decode guard band");
    res.decoded.push_back(spec.decoded_word());
    res.columns.push_back(std::move(spec));
  }
  return res;
}

void XpsramArray::calibrate() {
  // Corner patterns on a one-column scratch array: all-differ lights every
  // channel (twice, once per rail polarity), all-match darkens every channel.
  XpsramArray scratch(rows_, 1, plan_, config_);

  auto measure = [&](const Word& stored, const Word& input) {
    scratch.init_stored(0, stored);
    scratch.settle(500.0);
    Schedule s = scratch.compute_schedule(input);
    return scratch.measure_channel_powers(s);
  };

  const Word zeros(static_cast<std::size_t>(rows_), 0);
  const Word ones(static_cast<std::size_t>(rows_), 1);
  const auto hi_x = measure(zeros, ones);   // every channel high via the X bus
  const auto hi_xb = measure(ones, zeros);  // every channel high via the XB bus
  const auto lo_x = measure(ones, ones);
  const auto lo_xb = measure(zeros, zeros);

  thresholds_w_.assign(static_cast<std::size_t>(rows_), 0.0);
  double high_sum = 0.0;
  for (int i = 0; i < rows_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double high = std::min(hi_x[k], hi_xb[k]);
    const double low = std::max(lo_x[k], lo_xb[k]);
    if (high <= 0.0 || (low > 0.0 && high / low < 10.0))
      throw CalibrationError("calibration-failure: channel " + std::to_string(i + 1) +
                             " contrast " + std::to_string(low > 0.0 ? high / low : 0.0) +
                             "x is below 10x");
    // Matching corners can be exactly dark; keep the threshold off zero.
    thresholds_w_[k] = std::sqrt(high * std::max(low, 1e-4 * high));
    high_sum += high;
  }
  mean_high_w_ = high_sum / static_cast<double>(rows_);
}

void XpsramArray::set_calibration(std::vector<double> thresholds_w, double mean_high_w) {
  if (static_cast<int>(thresholds_w.size()) != rows_)
    throw std::invalid_argument("calibration must carry one threshold per channel");
  thresholds_w_ = std::move(thresholds_w);
  mean_high_w_ = mean_high_w;
}

std::vector<std::vector<double>> XpsramArray::crosstalk_matrix() const {
  std::vector<std::vector<double>> m(static_cast<std::size_t>(rows_),
                                     std::vector<double>(static_cast<std::size_t>(rows_), 0.0));
  for (int i = 0; i < rows_; ++i) {
    RingParams ring = config_.ring_m3;
    ring.dl_nm = plan_.channels[static_cast<std::size_t>(i)].dl_nm;
    RingState tuned{ring, config_.vdd_v, 0.0};
    const double res_nm = resonance_wavelength(tuned).nm();
    for (int j = 0; j < rows_; ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (i == j) ? 1.0
                   : lorentzian_response(
                         plan_.channels[static_cast<std::size_t>(j)].lambda_nm - res_nm,
                         ring.fwhm_nm);
    }
  }
  return m;
}

std::vector<std::string> XpsramArray::source_ports() const {
  std::vector<std::string> ports;
  ports.reserve(port_elems_.size());
  for (const auto& [name, elems] : port_elems_) ports.push_back(name);
  return ports;
}

void XpsramArray::set_source(const std::string& port, const WdmSignal& sig) {
  for (const auto& [name, elems] : port_elems_) {
    if (name == port) {
      for (int e : elems) graph_.set_source_signal(e, sig);
      return;
    }
  }
  throw std::invalid_argument("unknown source port " + port);
}

void XpsramArray::propagate() {
  for (Cell& c : cells_) {
    if (config_.driver_d1.tau_ps <= 0.0)
      c.d1_out_v = driver_output(c.latch.v_y_v, config_.driver_d1);
    if (config_.driver_d2.tau_ps <= 0.0)
      c.d2_out_v = driver_output(c.latch.v_yb_v, config_.driver_d2);
    graph_.set_drive(c.drive_d1, c.d1_out_v);
    graph_.set_drive(c.drive_d2, c.d2_out_v);
  }
  graph_.propagate();
}

void XpsramArray::integrate(double dt_ps) {
  for (Cell& c : cells_) {
    const double g1 = pd_conductance(graph_.pd_incident(c.pd_p1).total_w(), config_.pd_p1);
    const double g2 = pd_conductance(graph_.pd_incident(c.pd_p2).total_w(), config_.pd_p2);
    const double g3 = pd_conductance(graph_.pd_incident(c.pd_p3).total_w(), config_.pd_p3);
    const double g4 = pd_conductance(graph_.pd_incident(c.pd_p4).total_w(), config_.pd_p4);
    c.latch.v_y_v = node_step(c.latch.v_y_v, g1, g2, dt_ps, config_.vdd_v, config_.c_node_ff);
    c.latch.v_yb_v =
        node_step(c.latch.v_yb_v, g3, g4, dt_ps, config_.vdd_v, config_.c_node_ff);
    if (config_.driver_d1.tau_ps > 0.0) {
      const double target = driver_output(c.latch.v_y_v, config_.driver_d1);
      c.d1_out_v += std::min(1.0, dt_ps / config_.driver_d1.tau_ps) * (target - c.d1_out_v);
    }
    if (config_.driver_d2.tau_ps > 0.0) {
      const double target = driver_output(c.latch.v_yb_v, config_.driver_d2);
      c.d2_out_v += std::min(1.0, dt_ps / config_.driver_d2.tau_ps) * (target - c.d2_out_v);
    }
  }
}

std::vector<std::string> XpsramArray::probe_names() const {
  std::vector<std::string> names;
  for (int j = 0; j < cols_; ++j) {
    names.push_back("Z" + std::to_string(j + 1));
    for (int i = 0; i < rows_; ++i)
      names.push_back("Z" + std::to_string(j + 1) + ".ch" + std::to_string(i + 1));
  }
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const std::string sfx = cell_suffix(i, j);
      names.push_back("Y" + sfx);
      names.push_back("YB" + sfx);
      for (const char* pd : {"P1_", "P2_", "P3_", "P4_"}) names.push_back(pd + sfx);
      names.push_back("D1_" + sfx);
      names.push_back("D2_" + sfx);
    }
  return names;
}

Waveform::Unit XpsramArray::probe_unit(const std::string& name) const {
  if (name.starts_with("Y") || name.starts_with("D"))
    return Waveform::Unit::volts;
  return Waveform::Unit::watts;
}

double XpsramArray::probe_value(const std::string& name) const {
  if (name.starts_with("Z")) {
    const auto dot = name.find(".ch");
    const int col = std::stoi(name.substr(1, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - 1)) - 1;
    if (col < 0 || col >= cols_) throw std::invalid_argument("unknown probe " + name);
    const WdmSignal& z = graph_.output_signal(out_z_[static_cast<std::size_t>(col)]);
    if (dot == std::string::npos) return z.total_w();
    const int ch = std::stoi(name.substr(dot + 3)) - 1;
    if (ch < 0 || ch >= rows_) throw std::invalid_argument("unknown probe " + name);
    return z.at(Wavelength(plan_.channels[static_cast<std::size_t>(ch)].lambda_nm));
  }
  // Cell probes: <kind><row>_<col>
  auto parse_cell = [&](std::size_t prefix_len) -> const Cell& {
    const std::string body = name.substr(prefix_len);
    const auto us = body.find('_');
    if (us == std::string::npos) throw std::invalid_argument("unknown probe " + name);
    const int row = std::stoi(body.substr(0, us)) - 1;
    const int col = std::stoi(body.substr(us + 1)) - 1;
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
      throw std::invalid_argument("unknown probe " + name);
    return cell(row, col);
  };
  if (name.starts_with("YB")) return parse_cell(2).latch.v_yb_v;
  if (name.starts_with("Y")) return parse_cell(1).latch.v_y_v;
  if (name.starts_with("D1_")) return parse_cell(3).d1_out_v;
  if (name.starts_with("D2_")) return parse_cell(3).d2_out_v;
  if (name.starts_with("P1_")) return graph_.pd_incident(parse_cell(3).pd_p1).total_w();
  if (name.starts_with("P2_")) return graph_.pd_incident(parse_cell(3).pd_p2).total_w();
  if (name.starts_with("P3_")) return graph_.pd_incident(parse_cell(3).pd_p3).total_w();
  if (name.starts_with("P4_")) return graph_.pd_incident(parse_cell(3).pd_p4).total_w();
  throw std::invalid_argument("unknown probe " + name);
}

}  // namespace xpsram
