#include "mcport/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace mcport::log {

namespace {

Level from_env()
{
    const char* v = std::getenv("MCPORT_LOG");
    if (!v)
        return Level::warn;
    std::string s(v);
    if (s == "quiet")
        return Level::quiet;
    if (s == "info")
        return Level::info;
    if (s == "debug")
        return Level::debug;
    return Level::warn;
}

std::atomic<Level>& current()
{
    static std::atomic<Level> lvl{from_env()};
    return lvl;
}

std::mutex& sink_mutex()
{
    static std::mutex m;
    return m;
}

const char* tag(Level l)
{
    switch (l) {
    case Level::warn: return "warning: ";
    case Level::info: return "info: ";
    case Level::debug: return "debug: ";
    default: return "";
    }
}

} // namespace

Level level() { return current().load(); }
void set_level(Level l) { current().store(l); }

void write(Level l, std::string_view msg)
{
    if (l == Level::quiet || static_cast<int>(l) > static_cast<int>(level()))
        return;
    std::string line = tag(l);
    line.append(msg);
    line.push_back('\n');
    std::lock_guard lock(sink_mutex());
    std::cerr << line << std::flush;
}

} // namespace mcport::log
