#pragma once

#include <string>

namespace javelin::log {

/// Diagnostics verbosity, selected once per process via the JAVELIN_LOG
/// environment variable ("error", "info", "debug"; default "error").
/// Messages go to stderr so stdout stays machine-parseable.
enum class Level { error = 0, info = 1, debug = 2 };

Level level();
bool enabled(Level lvl);
void write(Level lvl, const std::string& message);

inline void error(const std::string& message) { write(Level::error, message); }
inline void info(const std::string& message) { write(Level::info, message); }
inline void debug(const std::string& message) { write(Level::debug, message); }

}  // namespace javelin::log
