#include "xpsram/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "xpsram/array.hpp"
#include "xpsram/bitcell.hpp"
#include "xpsram/energy.hpp"
#include "xpsram/engine.hpp"
#include "xpsram/log.hpp"
#include "xpsram/scenario.hpp"

namespace xpsram::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir = "xpsram_out";
  double dt_ps = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

ScenarioConfig resolve_config(const CommonOpts& opts, const std::string& command) {
  if (!opts.config_path.empty() && !opts.preset.empty())
    throw ConfigError("--config and --preset are mutually exclusive");
  ScenarioConfig cfg;
  if (!opts.preset.empty()) {
    if (preset_command(opts.preset) != command)
      throw ConfigError("preset '" + opts.preset + "' belongs to the '" +
                        preset_command(opts.preset) + "' subcommand");
    cfg = preset_scenario(opts.preset);
  } else if (!opts.config_path.empty()) {
    cfg = scenario_from_file(opts.config_path);
  }
  if (opts.dt_ps > 0.0) cfg.device.dt_ps = opts.dt_ps;
  if (opts.seed_set) cfg.seed = opts.seed;
  return cfg;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

ElectricalModel bitcell_electrical_model(const BitcellConfig& cfg) {
  ElectricalModel m;
  m.pds = {{"P1", cfg.pd_p1}, {"P2", cfg.pd_p2}, {"P3", cfg.pd_p3}, {"P4", cfg.pd_p4}};
  m.driver_probes = {"D1", "D2"};
  m.calib.v_pd_bias_v = cfg.vdd_v;
  m.vdd_v = cfg.vdd_v;
  return m;
}

ElectricalModel array_electrical_model(const XpsramArray& arr) {
  ElectricalModel m;
  const BitcellConfig& cfg = arr.base_config();
  for (int i = 1; i <= arr.rows(); ++i)
    for (int j = 1; j <= arr.cols(); ++j) {
      const std::string sfx = std::to_string(i) + "_" + std::to_string(j);
      m.pds.push_back({"P1_" + sfx, cfg.pd_p1});
      m.pds.push_back({"P2_" + sfx, cfg.pd_p2});
      m.pds.push_back({"P3_" + sfx, cfg.pd_p3});
      m.pds.push_back({"P4_" + sfx, cfg.pd_p4});
      m.driver_probes.push_back("D1_" + sfx);
      m.driver_probes.push_back("D2_" + sfx);
    }
  m.calib.v_pd_bias_v = cfg.vdd_v;
  m.vdd_v = cfg.vdd_v;
  return m;
}

json report_to_json(const EnergyReport& r) {
  return json{{"op", r.op_kind},
              {"window_ps", r.window_ps},
              {"optical_fJ", r.optical_fj},
              {"electrical_fJ", r.electrical_fj},
              {"total_fJ", r.total_fj},
              {"thermal_static_mW", r.thermal_static_mw}};
}

json comparison_to_json() {
  json rows = json::array();
  for (const ComparisonRow& row : comparison_table()) {
    json r{{"label", row.label}, {"latency_ns", row.latency_ns}, {"method", row.method}};
    if (row.energy_fj >= 0.0)
      r["energy_per_bit_fJ"] = row.energy_fj;
    else
      r["energy_per_bit_fJ"] = nullptr;
    rows.push_back(r);
  }
  return rows;
}

// ---- script runner -------------------------------------------------------

struct ScriptOutcome {
  struct OpRecord {
    OpResult result;  // sliced copy of the common fields
    int decoded = -1;
    double p_z_w = -1.0;
    double settle_time_ps = -1.0;
    bool implicit_hold = false;
  };
  std::vector<OpRecord> ops;
  std::vector<Waveform> combined;
  std::vector<std::string> diagnostics;
};

void append_traces(std::vector<Waveform>& combined, const std::vector<Waveform>& next) {
  if (combined.empty()) {
    combined = next;
    return;
  }
  for (std::size_t i = 0; i < combined.size(); ++i) {
    Waveform& dst = combined[i];
    const Waveform& src = next[i];
    std::size_t from = 0;
    if (!dst.t_ps.empty() && !src.t_ps.empty() &&
        std::fabs(dst.t_ps.back() - src.t_ps.front()) < 1e-9) {
      // The op boundary sample belongs to the new op (its sources apply).
      dst.t_ps.pop_back();
      dst.value.pop_back();
    }
    dst.t_ps.insert(dst.t_ps.end(), src.t_ps.begin() + from, src.t_ps.end());
    dst.value.insert(dst.value.end(), src.value.begin() + from, src.value.end());
  }
}

ScriptOutcome run_script(Bitcell& cell, const ScenarioConfig& cfg) {
  ScriptOutcome out;
  auto record = [&](OpResult&& res, int decoded, double p_z, double settle,
                    bool implicit) {
    if (!res.diagnostic.empty()) out.diagnostics.push_back(res.diagnostic);
    append_traces(out.combined, res.traces);
    out.ops.push_back({std::move(res), decoded, p_z, settle, implicit});
  };

  auto hold_until = [&](double t_target, bool implicit) {
    if (t_target > cell.now_ps() + 1e-9) {
      HoldResult h = cell.hold(t_target - cell.now_ps());
      record(std::move(h), -1, -1.0, -1.0, implicit);
    }
  };

  for (std::size_t k = 0; k < cfg.script.size(); ++k) {
    const OpSpec& spec = cfg.script[k];
    spec.validate();
    const double start = spec.t_start_ps >= 0.0 ? spec.t_start_ps : cell.now_ps();
    if (start < cell.now_ps() - 1e-9)
      throw ConfigError("script op " + std::to_string(k) + " ('" + spec.op +
                        "') starts at " + std::to_string(start) +
                        " ps, before the previous op finishes at " +
                        std::to_string(cell.now_ps()) + " ps");
    hold_until(start, true);

    const double next_start =
        (k + 1 < cfg.script.size() && cfg.script[k + 1].t_start_ps >= 0.0)
            ? cfg.script[k + 1].t_start_ps
            : -1.0;

    if (spec.op == "hold") {
      HoldResult h = cell.hold(spec.duration_ps);
      record(std::move(h), -1, -1.0, -1.0, false);
    } else if (spec.op == "write") {
      double tail = 450.0;
      if (next_start >= 0.0) {
        const double avail = next_start - start - cell.config().write_width_ps;
        if (avail < 0.0)
          throw ConfigError("script op " + std::to_string(k + 1) +
                            " overlaps the preceding write pulse");
        tail = std::min(tail, avail);
      }
      if (cfg.t_end_ps > 0.0)
        tail = std::min(tail, std::max(0.0, cfg.t_end_ps - start -
                                                cell.config().write_width_ps));
      WriteResult w = cell.write(spec.bit, tail);
      const double settle = w.settle_time_ps;
      record(std::move(w), -1, -1.0, settle, false);
    } else if (spec.op == "read" || spec.op == "xor" || spec.op == "xnor") {
      if (next_start >= 0.0 && next_start < start + cell.config().px_width_ps - 1e-9)
        throw ConfigError("script op " + std::to_string(k + 1) +
                          " overlaps the preceding " + spec.op + " pulse");
      ReadResult r = spec.op == "read"  ? cell.read()
                     : spec.op == "xor" ? cell.xor_compute(spec.input)
                                        : cell.xnor_compute(spec.input);
      const int decoded = r.bit;
      const double p_z = r.p_z_w;
      record(std::move(r), decoded, p_z, -1.0, false);
    } else {
      throw ConfigError("op '" + spec.op + "' is not valid in a bitcell script");
    }
  }
  if (cfg.t_end_ps > 0.0) hold_until(cfg.t_end_ps, true);
  return out;
}

std::vector<Waveform> select_probes(const std::vector<Waveform>& all,
                                    const std::vector<std::string>& wanted) {
  static const std::vector<std::string> kDefault = {
      ports::kY, ports::kYb, ports::kZ, ports::kWbl, ports::kWblb, ports::kX, ports::kXb};
  const std::vector<std::string>& names = wanted.empty() ? kDefault : wanted;
  std::vector<Waveform> out;
  for (const std::string& n : names) {
    auto it = std::find_if(all.begin(), all.end(),
                           [&](const Waveform& w) { return w.probe == n; });
    if (it == all.end())
      throw ConfigError("probe '" + n + "' was not recorded by the run");
    out.push_back(*it);
  }
  return out;
}

// ---- subcommands ---------------------------------------------------------

int cmd_bitcell(const CommonOpts& opts) {
  ScenarioConfig cfg = resolve_config(opts, "bitcell");
  if (cfg.script.empty() && cfg.t_end_ps <= 0.0) cfg.t_end_ps = 1000.0;

  Bitcell cell(cfg.device);
  cell.init_state(cfg.initial_bit);
  const double threshold = cell.calibrate_threshold();
  std::printf("decode threshold: %.4g uW (calibrated from the four compute corners)\n",
              w_to_uw(threshold));

  ScriptOutcome outcome = run_script(cell, cfg);

  ensure_out_dir(opts.out_dir);
  const auto csv_probes = select_probes(outcome.combined, cfg.probes);
  write_waveform_csv(opts.out_dir + "/waveform.csv", csv_probes);
  write_text(opts.out_dir + "/effective_config.json", scenario_to_json(cfg));

  const ElectricalModel model = bitcell_electrical_model(cfg.device);
  json reports = json::array();
  double total_fj = 0.0;
  for (const auto& op : outcome.ops) {
    if (op.implicit_hold) continue;
    EnergyReport r = make_energy_report(op.result.op_kind, op.result.schedule,
                                        op.result.traces, op.result.window_start_ps,
                                        op.result.window_end_ps, model,
                                        cell.graph().total_heat_mw());
    total_fj += r.total_fj;
    reports.push_back(report_to_json(r));
  }
  write_text(opts.out_dir + "/energy.json",
             json{{"reports", reports}, {"script_total_fJ", total_fj}}.dump(2) + "\n");

  for (const auto& op : outcome.ops) {
    if (op.implicit_hold) continue;
    const OpResult& r = op.result;
    std::printf("[t=%.0f ps] %-5s", r.window_start_ps, r.op_kind.c_str());
    if (op.decoded >= 0 || op.p_z_w >= 0.0) {
      const std::string bit = op.decoded < 0 ? "x" : std::to_string(op.decoded);
      std::printf(" -> %s (Z %.4g uW)", bit.c_str(), w_to_uw(op.p_z_w));
    }
    if (op.settle_time_ps >= 0.0) std::printf(" settled in %.0f ps", op.settle_time_ps);
    if (!r.diagnostic.empty()) std::printf("  [%s]", r.diagnostic.c_str());
    std::printf("\n");
  }
  std::printf("final stored bit: %d\n", cell.stored_bit());
  std::printf("outputs: %s/waveform.csv, energy.json, effective_config.json\n",
              opts.out_dir.c_str());

  return outcome.diagnostics.empty() ? kExitOk : kExitDiagnostic;
}

std::string spectrum_csv(const ColumnSpectrum& spec) {
  std::string csv = "channel,wavelength_nm,power_uW,decoded_bit\n";
  char buf[128];
  for (const ChannelReading& r : spec.readings) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6g,%d\n", r.channel, r.lambda_nm,
                  w_to_uw(r.power_w), r.decoded_bit);
    csv += buf;
  }
  return csv;
}

Word random_word(std::mt19937_64& rng, int bits) {
  Word w(static_cast<std::size_t>(bits));
  const std::uint64_t r = rng();
  for (int i = 0; i < bits; ++i) w[static_cast<std::size_t>(i)] = (r >> i) & 1u;
  return w;
}

std::uint64_t word_to_uint(const Word& w) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 1) v |= (1ull << i);
  return v;
}

int cmd_array(const CommonOpts& opts) {
  ScenarioConfig cfg = resolve_config(opts, "array");
  const ArraySpec& as = cfg.array;

  const ChannelPlan plan = plan_channels(as.rows, cfg.device.ring_m3);
  std::printf("channel plan: %d channels, spacing %.4f nm, FSR %.4f nm\n", plan.rows(),
              plan.spacing_nm(), plan.fsr_nm);

  XpsramArray arr(as.rows, as.cols, plan, cfg.device);
  arr.calibrate();
  ensure_out_dir(opts.out_dir);
  write_text(opts.out_dir + "/effective_config.json", scenario_to_json(cfg));

  if (as.random_words > 0) {
    // Seeded random word pairs, decoded against the plain integer oracle.
    // Workers own private array instances; results are ordered by index.
    struct Case {
      Word stored, input;
    };
    std::mt19937_64 rng(cfg.seed);
    std::vector<Case> cases(static_cast<std::size_t>(as.random_words));
    for (auto& c : cases) {
      c.stored = random_word(rng, as.rows);
      c.input = random_word(rng, as.rows);
    }
    std::vector<int> mismatches(cases.size(), 0);

    const unsigned n_workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next_case{0};
    for (unsigned wi = 0; wi < n_workers; ++wi) {
      workers.emplace_back([&]() {
        XpsramArray local(as.rows, as.cols, plan, cfg.device);
        local.set_calibration(arr.channel_thresholds_w(), arr.mean_high_level_w());
        for (std::size_t k = next_case.fetch_add(1); k < cases.size();
             k = next_case.fetch_add(1)) {
          for (int j = 0; j < as.cols; ++j) local.init_stored(j, cases[k].stored);
          local.settle(500.0);
          auto res = local.single_shot_xor(cases[k].input);
          const std::uint64_t want =
              word_to_uint(cases[k].stored) ^ word_to_uint(cases[k].input);
          for (int j = 0; j < as.cols; ++j)
            if (word_to_uint(res.decoded[static_cast<std::size_t>(j)]) != want ||
                !res.diagnostics.empty())
              mismatches[k] = 1;
        }
      });
    }
    for (auto& t : workers) t.join();

    const int bad = std::accumulate(mismatches.begin(), mismatches.end(), 0);
    std::printf("random-words: %d/%zu decoded words match the integer XOR oracle (seed %llu)\n",
                static_cast<int>(cases.size()) - bad, cases.size(),
                static_cast<unsigned long long>(cfg.seed));
    write_text(opts.out_dir + "/random_words.json",
               json{{"cases", cases.size()},
                    {"mismatches", bad},
                    {"seed", cfg.seed}}
                       .dump(2) +
                   "\n");
    return bad == 0 ? kExitOk : kExitDiagnostic;
  }

  if (static_cast<int>(as.stored_words.size()) != as.cols)
    throw ConfigError("array.stored_words must list one word per column (" +
                      std::to_string(as.cols) + ")");
  if (as.input_word.empty()) throw ConfigError("array.input_word is required");

  for (int j = 0; j < as.cols; ++j) {
    Word w = parse_word(as.stored_words[static_cast<std::size_t>(j)]);
    arr.init_stored(j, w);
  }
  arr.settle(500.0);
  const Word input = parse_word(as.input_word);
  auto res = arr.single_shot_xor(input);

  for (int j = 0; j < as.cols; ++j) {
    const auto& spec = res.columns[static_cast<std::size_t>(j)];
    write_text(opts.out_dir + "/spectrum_col" + std::to_string(j + 1) + ".csv",
               spectrum_csv(spec));
    std::printf("stored  [col %d]: %s\n", j + 1,
                format_word(arr.stored_word(j)).c_str());
  }
  std::printf("input          : %s\n", format_word(input).c_str());
  for (int j = 0; j < as.cols; ++j) {
    std::printf("decoded [col %d]: %s\n", j + 1,
                format_word(res.decoded[static_cast<std::size_t>(j)]).c_str());
    const auto pc = popcount_accumulate(res.columns[static_cast<std::size_t>(j)],
                                        cfg.device.pd_p1.responsivity_a_per_w,
                                        arr.mean_high_level_w());
    std::printf("popcount[col %d]: %d (photocurrent %.4g uA)%s\n", j + 1, pc.count,
                pc.photocurrent_a * 1e6, pc.ambiguous ? "  [ambiguous]" : "");
  }
  for (const std::string& d : res.diagnostics) std::printf("diagnostic: %s\n", d.c_str());
  std::printf("outputs: %s/spectrum_col*.csv, effective_config.json\n", opts.out_dir.c_str());

  return res.diagnostics.empty() ? kExitOk : kExitDiagnostic;
}

int cmd_sweep_dl(const CommonOpts& opts) {
  ScenarioConfig cfg = resolve_config(opts, "sweep-dl");
  const SweepSpec& sw = cfg.sweep;
  if (!(sw.dl_step_nm > 0.0)) throw ConfigError("sweep-dl step must be > 0");

  ensure_out_dir(opts.out_dir);
  std::string csv = "dl_nm,lambda_nm\n";
  std::vector<double> xs, ys;
  char buf[96];
  for (double dl = sw.dl_start_nm; dl <= sw.dl_end_nm + 1e-9; dl += sw.dl_step_nm) {
    RingParams ring = cfg.device.ring_m3;
    ring.dl_nm = dl;
    RingState tuned{ring, cfg.device.vdd_v, 0.0};
    const double lambda = resonance_wavelength(tuned).nm();
    std::snprintf(buf, sizeof buf, "%.3f,%.6f\n", dl, lambda);
    csv += buf;
    xs.push_back(dl);
    ys.push_back(lambda);
  }
  write_text(opts.out_dir + "/sweep_dl.csv", csv);
  write_text(opts.out_dir + "/effective_config.json", scenario_to_json(cfg));

  if (xs.size() >= 2) {
    // Least-squares slope of lambda(dl).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double expected = fsr_nm(cfg.device.ring_m3) / (8.0 * 34.0);
    std::printf("sweep-dl: %zu points, fit slope %.6f nm/nm, FSR/(8*34 nm) = %.6f "
                "(deviation %.3g%%)\n",
                xs.size(), slope, expected, 100.0 * std::fabs(slope - expected) / expected);
  } else {
    std::printf("sweep-dl: %zu points (no fit)\n", xs.size());
  }
  std::printf("outputs: %s/sweep_dl.csv\n", opts.out_dir.c_str());
  return kExitOk;
}

int cmd_energy(const CommonOpts& opts, bool compare) {
  ScenarioConfig cfg = resolve_config(opts, "energy");
  if (cfg.script.empty())
    cfg = preset_scenario("table1");  // default op: one XOR

  ensure_out_dir(opts.out_dir);

  std::vector<EnergyReport> reports;
  const bool is_array_op =
      std::any_of(cfg.script.begin(), cfg.script.end(),
                  [](const OpSpec& op) { return op.op == "array-xor"; });

  if (is_array_op) {
    if (cfg.script.size() != 1)
      throw ConfigError("an array-xor energy script must hold exactly that one op");
    const ArraySpec& as = cfg.array;
    const ChannelPlan plan = plan_channels(as.rows, cfg.device.ring_m3);
    XpsramArray arr(as.rows, as.cols, plan, cfg.device);
    if (static_cast<int>(as.stored_words.size()) != as.cols)
      throw ConfigError("array.stored_words must list one word per column");
    for (int j = 0; j < as.cols; ++j)
      arr.init_stored(j, parse_word(as.stored_words[static_cast<std::size_t>(j)]));
    arr.settle(500.0);
    auto res = arr.single_shot_xor(parse_word(as.input_word));
    // Second pass over an identical window to record the electrical probes
    // (the compute is non-destructive, so the state matches).
    const ElectricalModel model = array_electrical_model(arr);
    Schedule s2 = arr.compute_schedule(parse_word(as.input_word));
    std::vector<std::string> probes = model.driver_probes;
    for (const auto& pd : model.pds) probes.push_back(pd.probe);
    auto traces = run(arr, s2, probes);
    reports.push_back(make_energy_report("array-xor", s2, traces, s2.t_start_ps,
                                         s2.t_end_ps, model, 0.0));
  } else {
    Bitcell cell(cfg.device);
    cell.init_state(cfg.initial_bit);
    cell.calibrate_threshold();
    ScriptOutcome outcome = run_script(cell, cfg);
    const ElectricalModel model = bitcell_electrical_model(cfg.device);
    for (const auto& op : outcome.ops) {
      if (op.implicit_hold) continue;
      reports.push_back(make_energy_report(op.result.op_kind, op.result.schedule,
                                           op.result.traces, op.result.window_start_ps,
                                           op.result.window_end_ps, model,
                                           cell.graph().total_heat_mw()));
    }
  }

  json out;
  if (reports.size() == 1) {
    out = report_to_json(reports.front());
  } else {
    json arr_json = json::array();
    double total = 0.0;
    for (const EnergyReport& r : reports) {
      arr_json.push_back(report_to_json(r));
      total += r.total_fj;
    }
    out = json{{"reports", arr_json}, {"script_total_fJ", total}};
  }
  if (compare) out["comparison"] = comparison_to_json();
  write_text(opts.out_dir + "/energy.json", out.dump(2) + "\n");

  for (const EnergyReport& r : reports)
    std::printf("%s: optical %.4g fJ + electrical %.4g fJ = %.4g fJ (window %.0f ps, "
                "thermal %.3g mW static)\n",
                r.op_kind.c_str(), r.optical_fj, r.electrical_fj, r.total_fj, r.window_ps,
                r.thermal_static_mw);
  std::printf("outputs: %s/energy.json\n", opts.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"X-pSRAM electro-optic bitcell and WDM array simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool compare = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "scenario config JSON path");
    sub->add_option("--preset", opts.preset, "built-in scenario (fig3|fig4|fig5|fig6|table1)");
    sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--dt-ps", opts.dt_ps, "override engine time step");
    sub->add_option("--seed", opts.seed, "random-words seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
  };

  CLI::App* bitcell = app.add_subcommand("bitcell", "run a bitcell operation script");
  CLI::App* array = app.add_subcommand("array", "run a WDM array single-shot compute");
  CLI::App* sweep = app.add_subcommand("sweep-dl", "tabulate dl -> resonance wavelength");
  CLI::App* energy = app.add_subcommand("energy", "per-operation energy report");
  for (CLI::App* sub : {bitcell, array, sweep, energy}) add_common(sub);
  energy->add_flag("--compare", compare, "append reference comparison rows");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (bitcell->parsed()) return cmd_bitcell(opts);
    if (array->parsed()) return cmd_array(opts);
    if (sweep->parsed()) return cmd_sweep_dl(opts);
    if (energy->parsed()) return cmd_energy(opts, compare);
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const CalibrationError& e) {
    std::fprintf(stderr, "diagnostic: %s\n", e.what());
    return kExitDiagnostic;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace xpsram::cli
