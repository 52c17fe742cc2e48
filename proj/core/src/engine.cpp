#include "xpsram/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "xpsram/log.hpp"

namespace xpsram {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

struct GriddedEvent {
  const PulseEvent* ev;
  long long k_start;
  long long k_end;  // exclusive
};

}  // namespace

std::vector<Waveform> run(Netlist& netlist, const Schedule& schedule,
                          std::span<const std::string> probes) {
  schedule.validate();

  const auto available = netlist.probe_names();
  for (const std::string& p : probes) {
    if (std::find(available.begin(), available.end(), p) == available.end())
      throw std::invalid_argument("unknown probe '" + p + "'; available: " + join(available));
  }

  const auto sources = netlist.source_ports();
  std::unordered_map<std::string, std::vector<GriddedEvent>> by_port;
  const double dt = schedule.dt_ps;
  for (const PulseEvent& ev : schedule.events) {
    if (std::find(sources.begin(), sources.end(), ev.port) == sources.end())
      throw std::invalid_argument("pulse event targets unknown source port '" + ev.port +
                                  "'; sources: " + join(sources));
    GriddedEvent ge;
    ge.ev = &ev;
    ge.k_start = std::llround(ev.t_start_ps / dt);
    ge.k_end = std::llround((ev.t_start_ps + ev.width_ps) / dt);
    const double snap_err = std::max(std::fabs(ge.k_start * dt - ev.t_start_ps),
                                     std::fabs(ge.k_end * dt - (ev.t_start_ps + ev.width_ps)));
    if (snap_err > 1e-6)
      log::warn("pulse on " + ev.port + " at t=" + std::to_string(ev.t_start_ps) +
                " ps snapped to the " + std::to_string(dt) + " ps grid (off by " +
                std::to_string(snap_err) + " ps)");
    if (ge.k_end <= ge.k_start) ge.k_end = ge.k_start + 1;  // degenerate after snap
    by_port[ev.port].push_back(ge);
  }

  std::vector<Waveform> out(probes.size());
  const long long k0 = std::llround(schedule.t_start_ps / dt);
  const long long kN = std::llround(schedule.t_end_ps / dt);
  log::debug("engine: " + std::to_string(kN - k0) + " steps of " + std::to_string(dt) +
             " ps, " + std::to_string(schedule.events.size()) + " events, " +
             std::to_string(probes.size()) + " probes");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    out[i].probe = probes[i];
    out[i].unit = netlist.probe_unit(probes[i]);
    out[i].t_ps.reserve(static_cast<std::size_t>(kN - k0 + 1));
    out[i].value.reserve(static_cast<std::size_t>(kN - k0 + 1));
  }

  WdmSignal drive;
  for (long long k = k0; k <= kN; ++k) {
    const double t = static_cast<double>(k) * dt;
    for (const std::string& port : sources) {
      drive.clear();
      auto it = by_port.find(port);
      if (it != by_port.end()) {
        for (const GriddedEvent& ge : it->second)
          if (k >= ge.k_start && k < ge.k_end) drive.add(ge.ev->lambda, ge.ev->power_w);
      }
      netlist.set_source(port, drive);
    }
    netlist.propagate();
    for (std::size_t i = 0; i < probes.size(); ++i) {
      out[i].t_ps.push_back(t);
      out[i].value.push_back(netlist.probe_value(probes[i]));
    }
    if (k < kN) netlist.integrate(dt);
  }
  return out;
}

ProbeValue probe(Netlist& netlist, const std::string& name) {
  if (!netlist.has_probe(name))
    throw std::invalid_argument("unknown probe '" + name +
                                "'; available: " + join(netlist.probe_names()));
  netlist.propagate();
  return {netlist.probe_value(name), netlist.probe_unit(name)};
}

std::string waveform_csv_string(std::span<const Waveform> waveforms) {
  if (waveforms.empty()) return "# units: ps\ntime_ps\n";
  const std::size_t n = waveforms.front().size();
  for (const Waveform& w : waveforms) {
    if (w.size() != n) throw std::invalid_argument("waveforms disagree on sample count");
    for (std::size_t k = 0; k < n; ++k)
      if (std::fabs(w.t_ps[k] - waveforms.front().t_ps[k]) > 1e-9)
        throw std::invalid_argument("waveforms disagree on the time grid");
  }

  std::ostringstream os;
  os << "# units: ps";
  for (const Waveform& w : waveforms) os << "," << unit_name(w.unit);
  os << "\n";
  os << "time_ps";
  for (const Waveform& w : waveforms) os << "," << w.probe;
  os << "\n";
  char buf[64];
  for (std::size_t k = 0; k < n; ++k) {
    std::snprintf(buf, sizeof buf, "%.9g", waveforms.front().t_ps[k]);
    os << buf;
    for (const Waveform& w : waveforms) {
      std::snprintf(buf, sizeof buf, "%.9g", w.value[k]);
      os << "," << buf;
    }
    os << "\n";
  }
  return os.str();
}

void write_waveform_csv(const std::string& path, std::span<const Waveform> waveforms) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << waveform_csv_string(waveforms);
}

}  // namespace xpsram
