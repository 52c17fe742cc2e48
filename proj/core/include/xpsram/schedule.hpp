#pragma once

#include <string>
#include <vector>

#include "xpsram/units.hpp"
#include "xpsram/wdm.hpp"

namespace xpsram {

// Rectangular optical pulse on a named source port, active on [t_start,
// t_start + width). Edges are snapped to the simulation grid.
struct PulseEvent {
  std::string port;
  double t_start_ps = 0.0;
  double width_ps = 0.0;
  double power_w = 0.0;
  Wavelength lambda{};

  void validate() const;
};

struct Schedule {
  std::vector<PulseEvent> events;  // kept sorted by t_start
  double t_start_ps = 0.0;
  double t_end_ps = 0.0;
  double dt_ps = 1.0;

  void add(PulseEvent ev);
  void validate() const;

  // Sum of all pulses active on `port` at time t (grid-snapped edges).
  WdmSignal port_drive(const std::string& port, double t_ps) const;
};

struct Waveform {
  enum class Unit { volts, watts };

  std::string probe;
  Unit unit = Unit::volts;
  std::vector<double> t_ps;
  std::vector<double> value;

  std::size_t size() const { return t_ps.size(); }
  // Value at the grid sample nearest to t (uniform grid assumed).
  double at_time(double t_ps_query) const;
  // Mean over samples with t in [t0, t1).
  double mean_over(double t0_ps, double t1_ps) const;
};

const char* unit_name(Waveform::Unit u);

}  // namespace xpsram
