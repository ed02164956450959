#include "javelin/error.hpp"

#include <cstdio>

namespace javelin {
namespace {

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 8);
    for (char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

}  // namespace

std::string make_error_record(const std::string& code, const std::string& detail) {
    return "{\"error\": \"" + json_escape(code) + "\", \"detail\": \"" + json_escape(detail) +
           "\"}";
}

}  // namespace javelin
