#pragma once

#include <span>
#include <string>
#include <vector>

#include "xpsram/netlist.hpp"
#include "xpsram/schedule.hpp"

namespace xpsram {

// Fixed-step transient executor. Per step: sample scheduled sources,
// propagate optics combinationally, record probes, integrate electrical
// nodes. Deterministic for fixed inputs.
std::vector<Waveform> run(Netlist& netlist, const Schedule& schedule,
                          std::span<const std::string> probes);

// Instantaneous probe read (propagates first). Throws on unknown names,
// listing the available probes.
struct ProbeValue {
  double value;
  Waveform::Unit unit;
};
ProbeValue probe(Netlist& netlist, const std::string& name);

// CSV export: `# units:` comment, `time_ps,<probe>...` header, one row per
// step. All waveforms must share one time grid.
void write_waveform_csv(const std::string& path, std::span<const Waveform> waveforms);
std::string waveform_csv_string(std::span<const Waveform> waveforms);

}  // namespace xpsram
