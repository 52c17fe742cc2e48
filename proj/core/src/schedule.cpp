#include "xpsram/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xpsram {

void PulseEvent::validate() const {
  if (!(width_ps > 0.0)) throw std::invalid_argument("pulse width_ps must be > 0");
  if (power_w < 0.0) throw std::invalid_argument("pulse power_w must be >= 0");
  if (port.empty()) throw std::invalid_argument("pulse port must be named");
}

void Schedule::add(PulseEvent ev) {
  ev.validate();
  auto it = std::upper_bound(events.begin(), events.end(), ev.t_start_ps,
                             [](double t, const PulseEvent& e) { return t < e.t_start_ps; });
  events.insert(it, std::move(ev));
}

void Schedule::validate() const {
  if (!(dt_ps > 0.0)) throw std::invalid_argument("schedule dt_ps must be > 0");
  if (t_end_ps < t_start_ps) throw std::invalid_argument("schedule t_end precedes t_start");
  double last_start = -1e300;
  for (const PulseEvent& ev : events) {
    ev.validate();
    if (ev.t_start_ps < last_start)
      throw std::invalid_argument("schedule events must be sorted by t_start");
    last_start = ev.t_start_ps;
    if (ev.t_start_ps + ev.width_ps > t_end_ps + 1e-9)
      throw std::invalid_argument("schedule t_end_ps must cover every event (port " +
                                  ev.port + ")");
  }
}

WdmSignal Schedule::port_drive(const std::string& port, double t_ps) const {
  WdmSignal sig;
  for (const PulseEvent& ev : events) {
    if (ev.port != port) continue;
    const double t0 = std::round(ev.t_start_ps / dt_ps) * dt_ps;
    const double t1 = std::round((ev.t_start_ps + ev.width_ps) / dt_ps) * dt_ps;
    if (t_ps >= t0 - 1e-9 && t_ps < t1 - 1e-9) sig.add(ev.lambda, ev.power_w);
  }
  return sig;
}

double Waveform::at_time(double t_ps_query) const {
  if (t_ps.empty()) throw std::out_of_range("empty waveform");
  if (t_ps.size() == 1) return value.front();
  const double dt = t_ps[1] - t_ps[0];
  const auto idx = static_cast<std::ptrdiff_t>(std::llround((t_ps_query - t_ps.front()) / dt));
  const auto clamped = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(t_ps.size()) - 1);
  return value[static_cast<std::size_t>(clamped)];
}

double Waveform::mean_over(double t0_ps, double t1_ps) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t_ps.size(); ++i) {
    if (t_ps[i] >= t0_ps - 1e-9 && t_ps[i] < t1_ps - 1e-9) {
      sum += value[i];
      ++n;
    }
  }
  if (n == 0) throw std::out_of_range("waveform window [" + std::to_string(t0_ps) + ", " +
                                      std::to_string(t1_ps) + ") holds no samples");
  return sum / static_cast<double>(n);
}

const char* unit_name(Waveform::Unit u) {
  return u == Waveform::Unit::volts ? "V" : "W";
}

}  // namespace xpsram
