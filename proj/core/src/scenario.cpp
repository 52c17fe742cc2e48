#include "xpsram/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xpsram/netlist.hpp"

namespace xpsram {

using nlohmann::json;

void OpSpec::validate() const {
  static const std::set<std::string> known = {"hold", "write", "read",
                                              "xor", "xnor", "array-xor"};
  if (!known.count(op))
    throw ConfigError("unknown script op '" + op +
                      "' (want hold|write|read|xor|xnor|array-xor)");
  if (op == "write" && bit != 0 && bit != 1)
    throw ConfigError("write op needs \"bit\": 0 or 1");
  if ((op == "xor" || op == "xnor") && input != 0 && input != 1)
    throw ConfigError("'" + op + "' op needs \"input\": 0 or 1");
  if (op == "hold" && !(duration_ps > 0.0))
    throw ConfigError("hold op needs \"duration_ps\" > 0");
}

namespace {

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError("unknown config key '" + (path.empty() ? it.key() : path + "." + it.key()) +
                        "'");
  }
}

double num_or(const json& obj, const char* key, double fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("config key '" + path + "." + key + "' must be a number");
  return v.get<double>();
}

int int_or(const json& obj, const char* key, int fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError("config key '" + path + "." + key + "' must be an integer");
  return v.get<int>();
}

bool bool_or(const json& obj, const char* key, bool fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean())
    throw ConfigError("config key '" + path + "." + key + "' must be a boolean");
  return v.get<bool>();
}

void parse_ring(const json& obj, const std::string& path, RingParams& r) {
  check_keys(obj, path,
             {"radius_um", "dl_nm", "lambda_geo_nm", "geo_offset_nm", "fwhm_nm",
              "s_eo_nm_per_v", "s_th_nm_per_mw", "il_thru_db", "il_drop_db",
              "group_index"});
  r.radius_um = num_or(obj, "radius_um", r.radius_um, path);
  r.dl_nm = num_or(obj, "dl_nm", r.dl_nm, path);
  r.lambda_geo_nm = num_or(obj, "lambda_geo_nm", r.lambda_geo_nm, path);
  r.geo_offset_nm = num_or(obj, "geo_offset_nm", r.geo_offset_nm, path);
  r.fwhm_nm = num_or(obj, "fwhm_nm", r.fwhm_nm, path);
  r.s_eo_nm_per_v = num_or(obj, "s_eo_nm_per_v", r.s_eo_nm_per_v, path);
  r.s_th_nm_per_mw = num_or(obj, "s_th_nm_per_mw", r.s_th_nm_per_mw, path);
  r.il_thru_db = num_or(obj, "il_thru_db", r.il_thru_db, path);
  r.il_drop_db = num_or(obj, "il_drop_db", r.il_drop_db, path);
  r.group_index = num_or(obj, "group_index", r.group_index, path);
}

void parse_pd(const json& obj, const std::string& path, PdParams& p) {
  check_keys(obj, path, {"gamma_s_per_w", "g_dark_ns", "responsivity_a_per_w"});
  p.gamma_s_per_w = num_or(obj, "gamma_s_per_w", p.gamma_s_per_w, path);
  p.g_dark_s = ns_to_s(num_or(obj, "g_dark_ns", s_to_ns(p.g_dark_s), path));
  p.responsivity_a_per_w = num_or(obj, "responsivity_a_per_w", p.responsivity_a_per_w, path);
}

void parse_driver(const json& obj, const std::string& path, DriverParams& d) {
  check_keys(obj, path, {"gain", "v_out_min_v", "v_out_max_v", "tau_ps"});
  d.gain = num_or(obj, "gain", d.gain, path);
  d.v_out_min_v = num_or(obj, "v_out_min_v", d.v_out_min_v, path);
  d.v_out_max_v = num_or(obj, "v_out_max_v", d.v_out_max_v, path);
  d.tau_ps = num_or(obj, "tau_ps", d.tau_ps, path);
}

json ring_to_json(const RingParams& r) {
  return json{{"radius_um", r.radius_um},
              {"dl_nm", r.dl_nm},
              {"lambda_geo_nm", r.lambda_geo_nm},
              {"geo_offset_nm", r.geo_offset_nm},
              {"fwhm_nm", r.fwhm_nm},
              {"s_eo_nm_per_v", r.s_eo_nm_per_v},
              {"s_th_nm_per_mw", r.s_th_nm_per_mw},
              {"il_thru_db", r.il_thru_db},
              {"il_drop_db", r.il_drop_db},
              {"group_index", r.group_index}};
}

json pd_to_json(const PdParams& p) {
  return json{{"gamma_s_per_w", p.gamma_s_per_w},
              {"g_dark_ns", s_to_ns(p.g_dark_s)},
              {"responsivity_a_per_w", p.responsivity_a_per_w}};
}

json driver_to_json(const DriverParams& d) {
  return json{{"gain", d.gain},
              {"v_out_min_v", d.v_out_min_v},
              {"v_out_max_v", d.v_out_max_v},
              {"tau_ps", d.tau_ps}};
}

}  // namespace

ScenarioConfig scenario_from_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // Count lines up to the error byte for a friendlier diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i)
      if (json_text[i] == '\n') ++line;
    throw ConfigError("config is not valid JSON (line " + std::to_string(line) +
                      "): " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  check_keys(root, "", {"device", "engine", "initial_bit", "script", "probes",
                        "array", "sweep", "seed"});

  ScenarioConfig cfg;
  if (root.contains("device")) {
    const json& dev = root.at("device");
    check_keys(dev, "device",
               {"vdd_v", "c_node_ff", "lambda_in_nm", "bias_power_uw", "il_split_db",
                "il_mmi_db", "write_power_mw", "write_width_ps", "px_power_uw",
                "px_width_ps", "active_low_read", "guard_band_frac",
                "write_settle_deadline_ps", "ring", "ring_m1", "ring_m2", "ring_m3",
                "ring_m4", "pd", "pd_p1", "pd_p2", "pd_p3", "pd_p4", "driver",
                "driver_d1", "driver_d2"});
    BitcellConfig& d = cfg.device;
    d.vdd_v = num_or(dev, "vdd_v", d.vdd_v, "device");
    d.c_node_ff = num_or(dev, "c_node_ff", d.c_node_ff, "device");
    d.lambda_in = Wavelength(num_or(dev, "lambda_in_nm", d.lambda_in.nm(), "device"));
    d.bias_power_w = uw_to_w(num_or(dev, "bias_power_uw", w_to_uw(d.bias_power_w), "device"));
    d.il_split_db = num_or(dev, "il_split_db", d.il_split_db, "device");
    d.il_mmi_db = num_or(dev, "il_mmi_db", d.il_mmi_db, "device");
    d.write_power_w = mw_to_w(num_or(dev, "write_power_mw", w_to_mw(d.write_power_w), "device"));
    d.write_width_ps = num_or(dev, "write_width_ps", d.write_width_ps, "device");
    d.px_power_w = uw_to_w(num_or(dev, "px_power_uw", w_to_uw(d.px_power_w), "device"));
    d.px_width_ps = num_or(dev, "px_width_ps", d.px_width_ps, "device");
    d.active_low_read = bool_or(dev, "active_low_read", d.active_low_read, "device");
    d.guard_band_frac = num_or(dev, "guard_band_frac", d.guard_band_frac, "device");
    d.write_settle_deadline_ps =
        num_or(dev, "write_settle_deadline_ps", d.write_settle_deadline_ps, "device");

    // Driver clamps track VDD unless set explicitly.
    d.driver_d1.v_out_max_v = d.vdd_v;
    d.driver_d2.v_out_max_v = d.vdd_v;

    if (dev.contains("ring")) {
      parse_ring(dev.at("ring"), "device.ring", d.ring_m1);
      d.ring_m2 = d.ring_m1;
      d.ring_m3 = d.ring_m1;
      d.ring_m4 = d.ring_m1;
    }
    if (dev.contains("ring_m1")) parse_ring(dev.at("ring_m1"), "device.ring_m1", d.ring_m1);
    if (dev.contains("ring_m2")) parse_ring(dev.at("ring_m2"), "device.ring_m2", d.ring_m2);
    if (dev.contains("ring_m3")) parse_ring(dev.at("ring_m3"), "device.ring_m3", d.ring_m3);
    if (dev.contains("ring_m4")) parse_ring(dev.at("ring_m4"), "device.ring_m4", d.ring_m4);

    if (dev.contains("pd")) {
      parse_pd(dev.at("pd"), "device.pd", d.pd_p1);
      d.pd_p2 = d.pd_p1;
      d.pd_p3 = d.pd_p1;
      d.pd_p4 = d.pd_p1;
    }
    if (dev.contains("pd_p1")) parse_pd(dev.at("pd_p1"), "device.pd_p1", d.pd_p1);
    if (dev.contains("pd_p2")) parse_pd(dev.at("pd_p2"), "device.pd_p2", d.pd_p2);
    if (dev.contains("pd_p3")) parse_pd(dev.at("pd_p3"), "device.pd_p3", d.pd_p3);
    if (dev.contains("pd_p4")) parse_pd(dev.at("pd_p4"), "device.pd_p4", d.pd_p4);

    if (dev.contains("driver")) {
      parse_driver(dev.at("driver"), "device.driver", d.driver_d1);
      d.driver_d2 = d.driver_d1;
    }
    if (dev.contains("driver_d1"))
      parse_driver(dev.at("driver_d1"), "device.driver_d1", d.driver_d1);
    if (dev.contains("driver_d2"))
      parse_driver(dev.at("driver_d2"), "device.driver_d2", d.driver_d2);
  }

  if (root.contains("engine")) {
    const json& eng = root.at("engine");
    check_keys(eng, "engine", {"dt_ps", "t_end_ps"});
    cfg.device.dt_ps = num_or(eng, "dt_ps", cfg.device.dt_ps, "engine");
    cfg.t_end_ps = num_or(eng, "t_end_ps", cfg.t_end_ps, "engine");
  }

  cfg.initial_bit = int_or(root, "initial_bit", cfg.initial_bit, "");
  if (cfg.initial_bit != 0 && cfg.initial_bit != 1)
    throw ConfigError("initial_bit must be 0 or 1");

  if (root.contains("script")) {
    const json& script = root.at("script");
    if (!script.is_array()) throw ConfigError("script must be an array of op objects");
    int idx = 0;
    for (const json& item : script) {
      const std::string path = "script[" + std::to_string(idx++) + "]";
      check_keys(item, path, {"op", "t_start_ps", "bit", "input", "duration_ps"});
      OpSpec op;
      if (!item.contains("op") || !item.at("op").is_string())
        throw ConfigError(path + " needs a string \"op\"");
      op.op = item.at("op").get<std::string>();
      op.t_start_ps = num_or(item, "t_start_ps", op.t_start_ps, path);
      op.bit = int_or(item, "bit", op.bit, path);
      op.input = int_or(item, "input", op.input, path);
      op.duration_ps = num_or(item, "duration_ps", op.duration_ps, path);
      op.validate();
      cfg.script.push_back(op);
    }
  }

  if (root.contains("probes")) {
    const json& probes = root.at("probes");
    if (!probes.is_array()) throw ConfigError("probes must be an array of names");
    for (const json& p : probes) {
      if (!p.is_string()) throw ConfigError("probes entries must be strings");
      cfg.probes.push_back(p.get<std::string>());
    }
  }

  if (root.contains("array")) {
    const json& arr = root.at("array");
    check_keys(arr, "array", {"rows", "cols", "stored_words", "input_word", "random_words"});
    cfg.array.rows = int_or(arr, "rows", cfg.array.rows, "array");
    cfg.array.cols = int_or(arr, "cols", cfg.array.cols, "array");
    cfg.array.random_words = int_or(arr, "random_words", cfg.array.random_words, "array");
    if (arr.contains("stored_words")) {
      if (!arr.at("stored_words").is_array())
        throw ConfigError("array.stored_words must be an array of bit strings");
      cfg.array.stored_words.clear();
      for (const json& w : arr.at("stored_words")) {
        if (!w.is_string()) throw ConfigError("array.stored_words entries must be strings");
        cfg.array.stored_words.push_back(w.get<std::string>());
      }
    }
    if (arr.contains("input_word")) {
      if (!arr.at("input_word").is_string())
        throw ConfigError("array.input_word must be a bit string");
      cfg.array.input_word = arr.at("input_word").get<std::string>();
    }
  }

  if (root.contains("sweep")) {
    const json& sw = root.at("sweep");
    check_keys(sw, "sweep", {"dl_start_nm", "dl_end_nm", "dl_step_nm"});
    cfg.sweep.dl_start_nm = num_or(sw, "dl_start_nm", cfg.sweep.dl_start_nm, "sweep");
    cfg.sweep.dl_end_nm = num_or(sw, "dl_end_nm", cfg.sweep.dl_end_nm, "sweep");
    cfg.sweep.dl_step_nm = num_or(sw, "dl_step_nm", cfg.sweep.dl_step_nm, "sweep");
  }

  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer())
      throw ConfigError("seed must be an integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  return cfg;
}

ScenarioConfig scenario_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return scenario_from_json(ss.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  const BitcellConfig& d = cfg.device;
  json dev{{"vdd_v", d.vdd_v},
           {"c_node_ff", d.c_node_ff},
           {"lambda_in_nm", d.lambda_in.nm()},
           {"bias_power_uw", w_to_uw(d.bias_power_w)},
           {"il_split_db", d.il_split_db},
           {"il_mmi_db", d.il_mmi_db},
           {"write_power_mw", w_to_mw(d.write_power_w)},
           {"write_width_ps", d.write_width_ps},
           {"px_power_uw", w_to_uw(d.px_power_w)},
           {"px_width_ps", d.px_width_ps},
           {"active_low_read", d.active_low_read},
           {"guard_band_frac", d.guard_band_frac},
           {"write_settle_deadline_ps", d.write_settle_deadline_ps},
           {"ring_m1", ring_to_json(d.ring_m1)},
           {"ring_m2", ring_to_json(d.ring_m2)},
           {"ring_m3", ring_to_json(d.ring_m3)},
           {"ring_m4", ring_to_json(d.ring_m4)},
           {"pd_p1", pd_to_json(d.pd_p1)},
           {"pd_p2", pd_to_json(d.pd_p2)},
           {"pd_p3", pd_to_json(d.pd_p3)},
           {"pd_p4", pd_to_json(d.pd_p4)},
           {"driver_d1", driver_to_json(d.driver_d1)},
           {"driver_d2", driver_to_json(d.driver_d2)}};

  json script = json::array();
  for (const OpSpec& op : cfg.script) {
    json item{{"op", op.op}};
    if (op.t_start_ps >= 0.0) item["t_start_ps"] = op.t_start_ps;
    if (op.bit >= 0) item["bit"] = op.bit;
    if (op.input >= 0) item["input"] = op.input;
    if (op.duration_ps > 0.0) item["duration_ps"] = op.duration_ps;
    script.push_back(item);
  }

  json root{{"device", dev},
            {"engine", json{{"dt_ps", d.dt_ps}, {"t_end_ps", cfg.t_end_ps}}},
            {"initial_bit", cfg.initial_bit},
            {"script", script},
            {"probes", cfg.probes},
            {"array",
             json{{"rows", cfg.array.rows},
                  {"cols", cfg.array.cols},
                  {"stored_words", cfg.array.stored_words},
                  {"input_word", cfg.array.input_word},
                  {"random_words", cfg.array.random_words}}},
            {"sweep",
             json{{"dl_start_nm", cfg.sweep.dl_start_nm},
                  {"dl_end_nm", cfg.sweep.dl_end_nm},
                  {"dl_step_nm", cfg.sweep.dl_step_nm}}},
            {"seed", cfg.seed}};
  return root.dump(2) + "\n";
}

}  // namespace xpsram
