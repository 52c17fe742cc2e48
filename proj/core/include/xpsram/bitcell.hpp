#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xpsram/latch.hpp"
#include "xpsram/netlist.hpp"
#include "xpsram/optics.hpp"
#include "xpsram/schedule.hpp"

namespace xpsram {

// Optical/electrical port names. IN/WBL/WBLB/X/XB are optical sources, Z is
// the optical output, Y/YB are electrical probe-only nodes.
namespace ports {
inline constexpr const char* kIn = "IN";
inline constexpr const char* kWbl = "WBL";
inline constexpr const char* kWblb = "WBLB";
inline constexpr const char* kX = "X";
inline constexpr const char* kXb = "XB";
inline constexpr const char* kZ = "Z";
inline constexpr const char* kY = "Y";
inline constexpr const char* kYb = "YB";
}  // namespace ports

// Differential rail powers for one encoded logic bit: 1 -> (X=P_X, XB=dark),
// 0 -> (X=dark, XB=P_X). swap_polarity inverts the mapping (XNOR mode).
struct DiffDrive {
  double x_w = 0.0;
  double xb_w = 0.0;
};
DiffDrive encode_bit(int bit, double p_x_w, bool swap_polarity = false);

struct BitcellConfig {
  RingParams ring_m1;  // latch ring, drop feeds P2 (node Y pull-down)
  RingParams ring_m2;  // latch ring, drop feeds P4 (node YB pull-down)
  RingParams ring_m3;  // compute ring on X
  RingParams ring_m4;  // compute ring on XB
  PdParams pd_p1, pd_p2, pd_p3, pd_p4;
  DriverParams driver_d1, driver_d2;

  double vdd_v = 1.0;
  double c_node_ff = 1.0;
  Wavelength lambda_in{1310.52};
  double bias_power_w = 10e-6;

  double il_split_db = 0.0;
  double il_mmi_db = 0.5;

  double write_power_w = 1e-3;
  double write_width_ps = 50.0;
  double px_power_w = 100e-6;  // read/compute pulse power P_X
  double px_width_ps = 100.0;

  bool active_low_read = false;      // read via X instead of XB
  double guard_band_frac = 0.2;      // indeterminate band around threshold
  double write_settle_deadline_ps = 500.0;
  double dt_ps = 1.0;

  void validate() const;  // throws ConfigError listing every failed check
};

// Common payload of a scripted operation: the schedule it ran (bias
// included), the canonical energy window, probed traces, and an optional
// diagnostic (empty string = clean).
struct OpResult {
  std::string op_kind;
  Schedule schedule;
  double window_start_ps = 0.0;
  double window_end_ps = 0.0;
  std::vector<Waveform> traces;
  std::string diagnostic;

  bool ok() const { return diagnostic.empty(); }
  const Waveform& trace(const std::string& probe) const;
};

struct HoldResult : OpResult {
  bool stable = false;
};

struct WriteResult : OpResult {
  bool flipped = false;
  double settle_time_ps = -1.0;  // from pulse start; -1 = never settled
};

struct ReadResult : OpResult {
  int bit = -1;
  double p_z_w = 0.0;
  bool indeterminate = false;
};

// The full bitcell netlist: PS1 fans the IN bias to latch rings M1/M2 whose
// thru/drop ports feed the P1/P2 (node Y) and P3/P4 (node YB) dividers; WBL
// and WBLB reach {P1,P4} and {P2,P3} through PS2/PS3; X/XB pass compute rings
// M3/M4 whose thru ports combine in C1 to form Z; drops terminate in A1/A2.
// D1 buffers Y onto {M2, M3}, D2 buffers YB onto {M1, M4}.
class Bitcell : public Netlist {
 public:
  explicit Bitcell(BitcellConfig config);

  const BitcellConfig& config() const { return config_; }
  double now_ps() const { return t_now_ps_; }

  // Jam the latch to a data rail (1 -> Y=VDD, YB=0). Follow with a short
  // hold to settle onto the true fixed point.
  void init_state(int bit);
  LatchState latch_state() const { return latch_; }
  int stored_bit() const;  // nearest rail of Y

  // Runs the four compute corners on a scratch copy and stores the decode
  // threshold (geometric mean of lowest-high and highest-low Z power).
  // Throws CalibrationError when the corner contrast is below 10x.
  double calibrate_threshold();
  bool calibrated() const { return threshold_w_ > 0.0; }
  double decode_threshold_w() const;
  // Adopt a threshold calibrated elsewhere (identically configured cell).
  void set_decode_threshold(double threshold_w);

  HoldResult hold(double duration_ps);
  WriteResult write(int bit, double post_settle_ps = 450.0);
  ReadResult read();
  ReadResult xor_compute(int input_bit);
  ReadResult xnor_compute(int input_bit);

  // Netlist interface.
  std::vector<std::string> source_ports() const override;
  void set_source(const std::string& port, const WdmSignal& sig) override;
  void propagate() override;
  void integrate(double dt_ps) override;
  std::vector<std::string> probe_names() const override;
  Waveform::Unit probe_unit(const std::string& name) const override;
  double probe_value(const std::string& name) const override;

  const net::OpticalGraph& graph() const { return graph_; }

 private:
  ReadResult compute_impl(const char* op_kind, int input_bit, bool swap_polarity);
  Schedule op_schedule(double duration_ps) const;
  std::vector<Waveform> run_op(const Schedule& schedule);

  BitcellConfig config_;
  net::OpticalGraph graph_;
  LatchState latch_;
  double d1_out_v_ = 0.0;  // driver outputs (first-order lag state when tau>0)
  double d2_out_v_ = 0.0;
  double t_now_ps_ = 0.0;
  double threshold_w_ = -1.0;

  // element indices
  int src_in_, src_wbl_, src_wblb_, src_x_, src_xb_;
  int pd_p1_, pd_p2_, pd_p3_, pd_p4_;
  int ring_m1_, ring_m2_, ring_m3_, ring_m4_;
  int out_z_;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xpsram
