#include "xpsram/netlist.hpp"

#include <algorithm>
#include <queue>

namespace xpsram {

bool Netlist::has_probe(const std::string& name) const {
  const auto names = probe_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace net {

int OpticalGraph::add_elem(Elem e) {
  if (finalized_) throw TopologyError("optical graph already finalized");
  elems_.push_back(std::move(e));
  return static_cast<int>(elems_.size()) - 1;
}

int OpticalGraph::add_source(const std::string& name) {
  return add_elem({ElemKind::source, name, 0, 1, {}, {}, 0.0, -1, 0.0});
}

int OpticalGraph::add_splitter(const std::string& name, double il_db) {
  return add_elem({ElemKind::splitter, name, 1, 2, {}, {}, il_db, -1, 0.0});
}

int OpticalGraph::add_ring(const std::string& name, const RingParams& params,
                           int drive_slot, double p_heat_mw) {
  params.validate();
  n_drive_slots_ = std::max(n_drive_slots_, drive_slot + 1);
  return add_elem({ElemKind::ring, name, 1, 2, params, {}, 0.0, drive_slot, p_heat_mw});
}

int OpticalGraph::add_pd(const std::string& name, const PdParams& params, int n_inputs) {
  params.validate();
  return add_elem({ElemKind::pd, name, n_inputs, 0, {}, params, 0.0, -1, 0.0});
}

int OpticalGraph::add_mmi(const std::string& name, int n_inputs, double il_db) {
  if (n_inputs < 1) throw std::invalid_argument("mmi requires at least one input");
  return add_elem({ElemKind::mmi, name, n_inputs, 1, {}, {}, il_db, -1, 0.0});
}

int OpticalGraph::add_absorber(const std::string& name) {
  return add_elem({ElemKind::absorber, name, 1, 0, {}, {}, 0.0, -1, 0.0});
}

int OpticalGraph::add_output(const std::string& name, int n_inputs) {
  return add_elem({ElemKind::output, name, n_inputs, 0, {}, {}, 0.0, -1, 0.0});
}

void OpticalGraph::connect(int from_elem, int from_port, int to_elem, int to_port) {
  if (finalized_) throw TopologyError("optical graph already finalized");
  edges_.push_back({from_elem, from_port, to_elem, to_port});
}

void OpticalGraph::finalize() {
  // Wiring self-check: every output port feeds exactly one consumer, every
  // input slot is driven exactly once.
  std::vector<std::vector<int>> out_use(elems_.size());
  std::vector<std::vector<int>> in_use(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    out_use[i].assign(static_cast<std::size_t>(elems_[i].n_out), 0);
    in_use[i].assign(static_cast<std::size_t>(elems_[i].n_in), 0);
  }
  for (const Edge& e : edges_) {
    if (e.from_elem < 0 || e.from_elem >= static_cast<int>(elems_.size()) ||
        e.to_elem < 0 || e.to_elem >= static_cast<int>(elems_.size()))
      throw TopologyError("edge references unknown element");
    if (e.from_port < 0 || e.from_port >= elems_[e.from_elem].n_out)
      throw TopologyError("edge leaves nonexistent output port of " +
                          elems_[e.from_elem].name);
    if (e.to_port < 0 || e.to_port >= elems_[e.to_elem].n_in)
      throw TopologyError("edge enters nonexistent input slot of " +
                          elems_[e.to_elem].name);
    ++out_use[e.from_elem][e.from_port];
    ++in_use[e.to_elem][e.to_port];
  }
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (std::size_t p = 0; p < out_use[i].size(); ++p)
      if (out_use[i][p] != 1)
        throw TopologyError("output port " + std::to_string(p) + " of " + elems_[i].name +
                            " wired " + std::to_string(out_use[i][p]) + " times (want 1)");
    for (std::size_t p = 0; p < in_use[i].size(); ++p)
      if (in_use[i][p] != 1)
        throw TopologyError("input slot " + std::to_string(p) + " of " + elems_[i].name +
                            " wired " + std::to_string(in_use[i][p]) + " times (want 1)");
  }

  // Kahn topological order. Optics are memoryless, so a cycle would be a
  // zero-delay loop the executor cannot evaluate.
  std::vector<int> indeg(elems_.size(), 0);
  std::vector<std::vector<int>> succ(elems_.size());
  for (const Edge& e : edges_) {
    ++indeg[e.to_elem];
    succ[e.from_elem].push_back(e.to_elem);
  }
  std::queue<int> ready;
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  topo_order_.clear();
  while (!ready.empty()) {
    const int idx = ready.front();
    ready.pop();
    topo_order_.push_back(idx);
    for (int next : succ[idx])
      if (--indeg[next] == 0) ready.push(next);
  }
  if (topo_order_.size() != elems_.size())
    throw TopologyError(
        "optical topology cycle through zero-delay elements; only electrical "
        "nodes may close a loop");

  out_sig_.assign(elems_.size(), {});
  for (std::size_t i = 0; i < elems_.size(); ++i)
    out_sig_[i].resize(static_cast<std::size_t>(elems_[i].n_out));
  sink_sig_.assign(elems_.size(), {});
  src_sig_.assign(elems_.size(), {});
  drive_v_.assign(static_cast<std::size_t>(std::max(n_drive_slots_, 1)), 0.0);
  in_edges_.assign(elems_.size(), {});
  for (const Edge& e : edges_) in_edges_[static_cast<std::size_t>(e.to_elem)].push_back(e);
  finalized_ = true;
}

void OpticalGraph::set_drive(int slot, double v) {
  drive_v_.at(static_cast<std::size_t>(slot)) = v;
}

void OpticalGraph::set_heat(int ring_elem, double p_heat_mw) {
  Elem& e = elems_.at(static_cast<std::size_t>(ring_elem));
  if (e.kind != ElemKind::ring) throw std::invalid_argument("set_heat target is not a ring");
  e.p_heat_mw = p_heat_mw;
}

void OpticalGraph::set_source_signal(int elem, const WdmSignal& sig) {
  if (elems_.at(static_cast<std::size_t>(elem)).kind != ElemKind::source)
    throw std::invalid_argument("set_source_signal target is not a source");
  src_sig_[static_cast<std::size_t>(elem)] = sig;
}

void OpticalGraph::eval(int idx) {
  Elem& e = elems_[static_cast<std::size_t>(idx)];
  switch (e.kind) {
    case ElemKind::source:
      out_sig_[idx][0] = src_sig_[idx];
      break;
    case ElemKind::splitter: {
      const WdmSignal& in = sink_sig_[idx];
      WdmSignal half = in;
      half.scale(0.5 * db_to_linear(e.il_db));
      out_sig_[idx][0] = half;
      out_sig_[idx][1] = std::move(half);
      break;
    }
    case ElemKind::ring: {
      const WdmSignal& in = sink_sig_[idx];
      RingState state{e.ring, e.drive_slot >= 0 ? drive_v_[e.drive_slot] : 0.0,
                      e.p_heat_mw};
      WdmSignal& thru = out_sig_[idx][0];
      WdmSignal& drop = out_sig_[idx][1];
      thru.clear();
      drop.clear();
      for (const WdmSignal::Channel& c : in.channels()) {
        const RingTransfer t = ring_transfer(c.power_w, Wavelength(c.lambda_nm), state);
        thru.add(Wavelength(c.lambda_nm), t.thru_w);
        drop.add(Wavelength(c.lambda_nm), t.drop_w);
      }
      break;
    }
    case ElemKind::mmi: {
      WdmSignal& out = out_sig_[idx][0];
      out = sink_sig_[idx];  // inputs were already power-summed per channel
      out.scale(db_to_linear(e.il_db));
      break;
    }
    case ElemKind::pd:
    case ElemKind::absorber:
    case ElemKind::output:
      break;  // pure sinks
  }
}

void OpticalGraph::propagate() {
  if (!finalized_) throw TopologyError("optical graph not finalized");
  for (WdmSignal& s : sink_sig_) s.clear();
  // Walk the topological order, accumulating every element's inputs first;
  // producers always run before their consumers.
  for (int idx : topo_order_) {
    for (const Edge& e : in_edges_[static_cast<std::size_t>(idx)])
      sink_sig_[idx].accumulate(out_sig_[e.from_elem][e.from_port]);
    eval(idx);
  }
}

const WdmSignal& OpticalGraph::pd_incident(int elem) const {
  return sink_sig_.at(static_cast<std::size_t>(elem));
}

const WdmSignal& OpticalGraph::output_signal(int elem) const {
  return sink_sig_.at(static_cast<std::size_t>(elem));
}

const WdmSignal& OpticalGraph::source_signal(int elem) const {
  return src_sig_.at(static_cast<std::size_t>(elem));
}

double OpticalGraph::ring_resonance_nm(int elem) const {
  const Elem& e = elems_.at(static_cast<std::size_t>(elem));
  if (e.kind != ElemKind::ring) throw std::invalid_argument("not a ring element");
  RingState state{e.ring, e.drive_slot >= 0 ? drive_v_[e.drive_slot] : 0.0, e.p_heat_mw};
  return resonance_wavelength(state).nm();
}

double OpticalGraph::total_heat_mw() const {
  double sum = 0.0;
  for (const Elem& e : elems_)
    if (e.kind == ElemKind::ring) sum += e.p_heat_mw;
  return sum;
}

int OpticalGraph::find(const std::string& name) const {
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i].name == name) return static_cast<int>(i);
  return -1;
}

const std::string& OpticalGraph::name_of(int elem) const {
  return elems_.at(static_cast<std::size_t>(elem)).name;
}

ElemKind OpticalGraph::kind_of(int elem) const {
  return elems_.at(static_cast<std::size_t>(elem)).kind;
}

}  // namespace net
}  // namespace xpsram
