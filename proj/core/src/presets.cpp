#include "xpsram/scenario.hpp"

#include "xpsram/netlist.hpp"

namespace xpsram {

namespace {

// Write/hold/read verification sequence: flip to 0, dark read, flip to 1,
// bright read.
ScenarioConfig make_fig3() {
  ScenarioConfig cfg;
  cfg.initial_bit = 1;
  cfg.t_end_ps = 2000.0;
  cfg.script = {
      {"write", 750.0, 0, -1, 0.0},
      {"read", 880.0, -1, -1, 0.0},
      {"write", 1250.0, 1, -1, 0.0},
      {"read", 1380.0, -1, -1, 0.0},
  };
  return cfg;
}

// Four-corner XOR verification: stored 0 against inputs 1/0, then stored 1
// against inputs 1/0.
ScenarioConfig make_fig4() {
  ScenarioConfig cfg;
  cfg.initial_bit = 0;
  cfg.t_end_ps = 3100.0;
  cfg.script = {
      {"xor", 1620.0, -1, 1, 0.0},
      {"xor", 1880.0, -1, 0, 0.0},
      {"write", 2150.0, 1, -1, 0.0},
      {"xor", 2620.0, -1, 1, 0.0},
      {"xor", 2880.0, -1, 0, 0.0},
  };
  return cfg;
}

// dl -> resonance wavelength sweep over one FSR.
ScenarioConfig make_fig5() {
  ScenarioConfig cfg;
  cfg.sweep = {0.0, 272.0, 34.0};
  return cfg;
}

// 8-bit single-shot WDM XOR.
ScenarioConfig make_fig6() {
  ScenarioConfig cfg;
  cfg.array.rows = 8;
  cfg.array.cols = 1;
  cfg.array.stored_words = {"10010011"};
  cfg.array.input_word = "11001010";
  return cfg;
}

// Single XOR op for the energy report.
ScenarioConfig make_table1() {
  ScenarioConfig cfg;
  cfg.initial_bit = 0;
  cfg.t_end_ps = 700.0;
  cfg.script = {{"xor", 600.0, -1, 1, 0.0}};
  return cfg;
}

}  // namespace

ScenarioConfig preset_scenario(const std::string& name) {
  if (name == "fig3") return make_fig3();
  if (name == "fig4") return make_fig4();
  if (name == "fig5") return make_fig5();
  if (name == "fig6") return make_fig6();
  if (name == "table1") return make_table1();
  throw ConfigError("unknown preset '" + name + "' (have: fig3 fig4 fig5 fig6 table1)");
}

std::vector<std::string> preset_names() {
  return {"fig3", "fig4", "fig5", "fig6", "table1"};
}

std::string preset_command(const std::string& name) {
  if (name == "fig3" || name == "fig4") return "bitcell";
  if (name == "fig5") return "sweep-dl";
  if (name == "fig6") return "array";
  if (name == "table1") return "energy";
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace xpsram
