#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xpsram/bitcell.hpp"
#include "xpsram/netlist.hpp"

namespace xpsram {

// One WDM channel per row: row i carries dl = i * 34 nm, lambda_i spaced by
// FSR/8 from the base resonance.
struct ChannelPlan {
  struct Channel {
    int row = 0;
    double dl_nm = 0.0;
    double lambda_nm = 0.0;
  };
  std::vector<Channel> channels;  // strictly increasing in wavelength
  double fsr_nm = 0.0;

  int rows() const { return static_cast<int>(channels.size()); }
  double spacing_nm() const;
  void validate() const;  // throws ConfigError
};

// Throws ConfigError for m > 8 (one FSR at default spacing).
ChannelPlan plan_channels(int rows, const RingParams& compute_ring);

// A data word, one bit per row; index 0 is row 0 (leftmost character).
using Word = std::vector<int>;
Word parse_word(const std::string& text);  // throws std::invalid_argument
std::string format_word(const Word& word); // '0'/'1', 'x' for indeterminate (-1)

struct WdmDrive {
  WdmSignal x, xb;
};
// Per-channel differential encoding of a word; bit i rides lambda_i.
WdmDrive encode_input_word(const Word& word, const ChannelPlan& plan, double p_x_w,
                           bool swap_polarity = false);

struct ChannelReading {
  int channel = 0;  // 1-based row/channel index
  double lambda_nm = 0.0;
  double power_w = 0.0;
  int decoded_bit = -1;  // -1 = indeterminate
  bool indeterminate = false;
};
struct ColumnSpectrum {
  std::vector<ChannelReading> readings;
  Word decoded_word() const;
};

// Per-channel threshold compare with the same +-guard band as the bitcell.
ColumnSpectrum decode_column_spectrum(const std::vector<double>& power_w,
                                      const ChannelPlan& plan,
                                      const std::vector<double>& thresholds_w,
                                      double guard_band_frac);

struct PopcountResult {
  int count = 0;
  double photocurrent_a = 0.0;
  bool ambiguous = false;
  std::string diagnostic;
};
// Photocurrent = responsivity * total power; count = photocurrent / unit
// current rounded, where the unit is one calibrated per-channel high level.
// Flags ambiguity when the rounding residue exceeds 0.4.
PopcountResult popcount_accumulate(const ColumnSpectrum& spectrum,
                                   double responsivity_a_per_w,
                                   double per_channel_high_w);

// m x n array of bitcells. Latch optics stay per-cell at the base wavelength;
// row i's compute rings are retuned by dl_i. Each column's X (XB) waveguide is
// a bus threading the input->thru path of every row's M3 (M4) in row order,
// and the column MMI combines the two bus ends into Z_j.
class XpsramArray : public Netlist {
 public:
  XpsramArray(int rows, int cols, ChannelPlan plan, BitcellConfig base_config);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const ChannelPlan& plan() const { return plan_; }
  const BitcellConfig& base_config() const { return config_; }
  double now_ps() const { return t_now_ps_; }

  void init_stored(int col, const Word& word);
  Word stored_word(int col) const;
  void settle(double duration_ps = 500.0);

  // Two-pattern calibration (all-differ / all-match) of per-channel
  // thresholds on a scratch copy. Throws CalibrationError below 10x contrast.
  void calibrate();
  bool calibrated() const { return !thresholds_w_.empty(); }
  const std::vector<double>& channel_thresholds_w() const { return thresholds_w_; }
  double mean_high_level_w() const { return mean_high_w_; }
  // Adopt thresholds calibrated on an identically configured array.
  void set_calibration(std::vector<double> thresholds_w, double mean_high_w);

  struct ComputeResult {
    std::vector<ColumnSpectrum> columns;
    std::vector<Word> decoded;
    Schedule schedule;
    double window_start_ps = 0.0;
    double window_end_ps = 0.0;
    std::vector<std::string> diagnostics;  // per-channel indeterminate notes
    bool ok() const { return diagnostics.empty(); }
  };
  // One compute window; the input word is applied to every column's bus pair.
  ComputeResult single_shot_xor(const Word& input);
  // The schedule such a window would run (bias per row + encoded rails).
  Schedule compute_schedule(const Word& input) const;

  // Entry (i,j): response of row i's tuned compute ring at channel j's
  // wavelength; diagonal is 1.
  std::vector<std::vector<double>> crosstalk_matrix() const;

  // Netlist interface.
  std::vector<std::string> source_ports() const override;
  void set_source(const std::string& port, const WdmSignal& sig) override;
  void propagate() override;
  void integrate(double dt_ps) override;
  std::vector<std::string> probe_names() const override;
  Waveform::Unit probe_unit(const std::string& name) const override;
  double probe_value(const std::string& name) const override;

 private:
  struct Cell {
    LatchState latch;
    double d1_out_v = 0.0;
    double d2_out_v = 0.0;
    int pd_p1, pd_p2, pd_p3, pd_p4;
    int ring_m1, ring_m2, ring_m3, ring_m4;
    int drive_d1, drive_d2;
    int src_in, src_wbl, src_wblb;
  };

  Cell& cell(int row, int col) { return cells_[row * cols_ + col]; }
  const Cell& cell(int row, int col) const { return cells_[row * cols_ + col]; }
  std::vector<double> measure_channel_powers(const Schedule& schedule,
                                             std::vector<Waveform>* traces_out = nullptr);

  int rows_, cols_;
  ChannelPlan plan_;
  BitcellConfig config_;
  net::OpticalGraph graph_;
  std::vector<Cell> cells_;
  std::vector<int> src_x_, src_xb_, out_z_;  // per column
  // Logical source ports; a row's IN port fans out to all its cells.
  std::vector<std::pair<std::string, std::vector<int>>> port_elems_;
  double t_now_ps_ = 0.0;
  std::vector<double> thresholds_w_;
  double mean_high_w_ = 0.0;
};

}  // namespace xpsram
