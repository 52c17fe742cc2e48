#pragma once

#include <functional>
#include <string>

namespace xpsram::log {

enum class Level { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

// Verbosity comes from the XPSRAM_LOG environment variable
// (off|error|warn|info|debug); default is warn.
Level level();
void set_level(Level lv);

// Tests may install a sink to capture messages; default sink writes stderr.
using Sink = std::function<void(Level, const std::string&)>;
void set_sink(Sink sink);
void reset_sink();

void emit(Level lv, const std::string& msg);

inline void warn(const std::string& msg) { emit(Level::warn, msg); }
inline void info(const std::string& msg) { emit(Level::info, msg); }
inline void debug(const std::string& msg) { emit(Level::debug, msg); }
inline void error(const std::string& msg) { emit(Level::error, msg); }

}  // namespace xpsram::log
