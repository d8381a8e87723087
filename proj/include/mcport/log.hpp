#pragma once

#include <string_view>

namespace mcport::log {

enum class Level { quiet = 0, warn = 1, info = 2, debug = 3 };

/// Current verbosity. Initialised once from MCPORT_LOG
/// (quiet|warn|info|debug, default warn).
Level level();
void set_level(Level l);

/// Writes one whole line to stderr under a lock.
void write(Level l, std::string_view msg);

inline void warn(std::string_view msg) { write(Level::warn, msg); }
inline void info(std::string_view msg) { write(Level::info, msg); }
inline void debug(std::string_view msg) { write(Level::debug, msg); }

} // namespace mcport::log
