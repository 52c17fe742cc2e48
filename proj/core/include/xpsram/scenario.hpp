#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xpsram/bitcell.hpp"

namespace xpsram {

// One scripted operation. t_start_ps = -1 schedules it right after the
// previous op (gaps become holds).
struct OpSpec {
  std::string op;  // hold | write | read | xor | xnor
  double t_start_ps = -1.0;
  int bit = -1;          // write
  int input = -1;        // xor / xnor
  double duration_ps = 0.0;  // hold

  void validate() const;
};

struct SweepSpec {
  double dl_start_nm = 0.0;
  double dl_end_nm = 272.0;
  double dl_step_nm = 34.0;
};

struct ArraySpec {
  int rows = 8;
  int cols = 1;
  std::vector<std::string> stored_words;  // one per column
  std::string input_word;
  int random_words = 0;  // > 0 selects random-words mode
};

struct ScenarioConfig {
  BitcellConfig device;
  double t_end_ps = 0.0;  // 0 = derive from script
  int initial_bit = 0;
  std::vector<OpSpec> script;
  std::vector<std::string> probes;  // empty = Y,YB,Z + pulsed ports
  ArraySpec array;
  SweepSpec sweep;
  std::uint64_t seed = 1;
};

// Strict JSON parsing: unknown keys are rejected with their path, parse
// errors carry the byte offset. Keys carry unit suffixes (_nm, _ps, _uw...).
ScenarioConfig scenario_from_json(const std::string& json_text);
ScenarioConfig scenario_from_file(const std::string& path);

// Effective-config dump; feeding it back reproduces the identical run.
std::string scenario_to_json(const ScenarioConfig& config);

ScenarioConfig preset_scenario(const std::string& name);
std::vector<std::string> preset_names();
// Subcommand a preset belongs to ("bitcell", "array", "sweep-dl", "energy").
std::string preset_command(const std::string& name);

}  // namespace xpsram
