#include "xpsram/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace xpsram::log {

namespace {

Level parse_env_level() {
  const char* env = std::getenv("XPSRAM_LOG");
  if (!env) return Level::warn;
  std::string v(env);
  if (v == "off" || v == "0") return Level::off;
  if (v == "error") return Level::error;
  if (v == "warn") return Level::warn;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

const char* tag(Level lv) {
  switch (lv) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
    default: return "?";
  }
}

struct State {
  Level level = parse_env_level();
  Sink sink;
  std::mutex mu;
};

State& state() {
  static State s;
  return s;
}

}  // namespace

Level level() { return state().level; }
void set_level(Level lv) { state().level = lv; }

void set_sink(Sink sink) {
  std::lock_guard<std::mutex> lock(state().mu);
  state().sink = std::move(sink);
}

void reset_sink() { set_sink(nullptr); }

void emit(Level lv, const std::string& msg) {
  State& s = state();
  if (static_cast<int>(lv) > static_cast<int>(s.level)) return;
  std::lock_guard<std::mutex> lock(s.mu);
  if (s.sink) {
    s.sink(lv, msg);
  } else {
    std::fprintf(stderr, "[xpsram %s] %s\n", tag(lv), msg.c_str());
  }
}

}  // namespace xpsram::log
