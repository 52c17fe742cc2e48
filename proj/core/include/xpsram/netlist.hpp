#pragma once

#include <string>
#include <vector>

#include "xpsram/optics.hpp"
#include "xpsram/schedule.hpp"
#include "xpsram/wdm.hpp"

namespace xpsram {

// Raised when a netlist or config fails validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the optical graph has a zero-delay cycle or broken wiring.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace net {

enum class ElemKind { source, splitter, ring, pd, mmi, absorber, output };

// Directed graph of memoryless optical elements. Light propagates
// combinationally in topological order each step; only electrical nodes
// (outside this graph) hold state. Ring drive voltages are injected per step
// through a drive slot, which is what legally breaks the latch's
// optical-electrical loop.
class OpticalGraph {
 public:
  int add_source(const std::string& name);
  int add_splitter(const std::string& name, double il_db);
  // drive_slot indexes the external drive-voltage vector; -1 = undriven.
  int add_ring(const std::string& name, const RingParams& params, int drive_slot,
               double p_heat_mw = 0.0);
  int add_pd(const std::string& name, const PdParams& params, int n_inputs);
  int add_mmi(const std::string& name, int n_inputs, double il_db);
  int add_absorber(const std::string& name);
  int add_output(const std::string& name, int n_inputs = 1);

  // Ring ports: out 0 = thru, out 1 = drop. Splitter: out 0/1.
  void connect(int from_elem, int from_port, int to_elem, int to_port);

  // Validates wiring (every input slot and output port connected exactly
  // once) and computes the topological evaluation order. Throws
  // TopologyError on cycles or wiring defects.
  void finalize();

  int drive_slot_count() const { return n_drive_slots_; }
  void set_drive(int slot, double v);
  void set_heat(int ring_elem, double p_heat_mw);

  void set_source_signal(int elem, const WdmSignal& sig);
  void propagate();

  // Post-propagate reads.
  const WdmSignal& pd_incident(int elem) const;
  const WdmSignal& output_signal(int elem) const;
  const WdmSignal& source_signal(int elem) const;
  double ring_resonance_nm(int elem) const;
  double total_heat_mw() const;

  int find(const std::string& name) const;  // -1 if absent
  const std::string& name_of(int elem) const;
  ElemKind kind_of(int elem) const;
  std::size_t element_count() const { return elems_.size(); }

 private:
  struct Elem {
    ElemKind kind;
    std::string name;
    int n_in = 0;
    int n_out = 0;
    RingParams ring;
    PdParams pd;
    double il_db = 0.0;
    int drive_slot = -1;
    double p_heat_mw = 0.0;
  };
  struct Edge {
    int from_elem, from_port, to_elem, to_port;
  };

  int add_elem(Elem e);
  void eval(int idx);

  std::vector<Elem> elems_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Edge>> in_edges_;
  std::vector<int> topo_order_;
  std::vector<std::vector<WdmSignal>> out_sig_;  // per elem, per out port
  std::vector<WdmSignal> sink_sig_;              // accumulated PD/output input
  std::vector<WdmSignal> src_sig_;
  std::vector<double> drive_v_;
  int n_drive_slots_ = 0;
  bool finalized_ = false;
};

}  // namespace net

// A simulatable circuit: schedule-driven optical sources plus stateful
// electrical nodes. The engine drives it step by step.
class Netlist {
 public:
  virtual ~Netlist() = default;

  virtual std::vector<std::string> source_ports() const = 0;
  virtual void set_source(const std::string& port, const WdmSignal& sig) = 0;

  // Combinational optics pass using the current electrical state.
  virtual void propagate() = 0;
  // Advance electrical state by dt using the propagated optical powers.
  virtual void integrate(double dt_ps) = 0;

  virtual std::vector<std::string> probe_names() const = 0;
  virtual bool has_probe(const std::string& name) const;
  virtual Waveform::Unit probe_unit(const std::string& name) const = 0;
  virtual double probe_value(const std::string& name) const = 0;
};

}  // namespace xpsram
