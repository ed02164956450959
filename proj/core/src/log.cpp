#include "javelin/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace javelin::log {
namespace {

Level parse_env() {
    const char* raw = std::getenv("JAVELIN_LOG");
    if (raw == nullptr) return Level::error;
    if (std::strcmp(raw, "debug") == 0) return Level::debug;
    if (std::strcmp(raw, "info") == 0) return Level::info;
    return Level::error;
}

const char* name(Level lvl) {
    switch (lvl) {
        case Level::debug: return "debug";
        case Level::info: return "info";
        default: return "error";
    }
}

}  // namespace

Level level() {
    static const Level lvl = parse_env();
    return lvl;
}

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(level()); }

void write(Level lvl, const std::string& message) {
    if (!enabled(lvl)) return;
    std::fprintf(stderr, "[javelin %s] %s\n", name(lvl), message.c_str());
}

}  // namespace javelin::log
